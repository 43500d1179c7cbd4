#include <CLI11.hpp>
#include <iostream>

#include "olre/errors.hpp"
#include "olre/run_config.hpp"
#include "olre/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Online kernel likelihood-ratio estimation toolkit"};
  app.require_subcommand(1);

  int jobs = 1;
  bool verbose = false;
  app.add_option("--jobs", jobs, "worker threads for trials")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", verbose, "progress logging to stderr");

  std::string run_config, select_config, plot_csv, plot_svg;
  auto* run = app.add_subcommand("run", "execute all trials of an experiment config");
  run->add_option("config", run_config, "experiment config file")->required();
  run->fallthrough();
  auto* select = app.add_subcommand("select", "cross-validate kernel hyperparameters");
  select->add_option("config", select_config, "experiment config file")->required();
  select->fallthrough();
  auto* plot = app.add_subcommand("plot", "render an aggregate CSV as a log-log SVG");
  plot->add_option("csv", plot_csv, "aggregate CSV path")->required();
  plot->add_option("svg", plot_svg, "output SVG path")->required();
  plot->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return olre::cmd_run(run_config, jobs, verbose, std::cerr);
    if (select->parsed()) return olre::cmd_select(select_config, verbose, std::cerr);
    return olre::cmd_plot(plot_csv, plot_svg, std::cerr);
  } catch (const olre::config_error& e) {
    std::cerr << (run->parsed() ? run_config : select_config) << ":" << e.line() << ": "
              << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const olre::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
