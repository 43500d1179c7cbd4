#include "olre/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "olre/csv.hpp"

namespace olre {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_real(int line, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw config_error(line, "key \"" + key + "\": expected a real number, got \"" + v + "\"");
  }
}

std::int64_t parse_int(int line, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const std::int64_t x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw config_error(line, "key \"" + key + "\": expected an integer, got \"" + v + "\"");
  }
}

std::uint64_t parse_uint(int line, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const std::uint64_t x = std::stoull(v, &pos);
    if (pos != v.size() || (!v.empty() && v[0] == '-')) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw config_error(line,
                       "key \"" + key + "\": expected a non-negative integer, got \"" + v + "\"");
  }
}

bool parse_bool(int line, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw config_error(line, "key \"" + key + "\": expected true/false, got \"" + v + "\"");
}

MethodSpec parse_method(int line, const std::string& value) {
  std::istringstream in(value);
  std::string name;
  in >> name;
  MethodSpec m;
  bool have_alpha = false;
  if (name == "olre") {
    m.kind = MethodKind::Olre;
  } else if (name == "rulsif") {
    m.kind = MethodKind::Rulsif;
  } else {
    throw config_error(line, "key \"method\": unknown method \"" + name + "\"");
  }
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw config_error(line, "key \"method\": expected name=value, got \"" + tok + "\"");
    const std::string k = tok.substr(0, eq);
    const std::string v = tok.substr(eq + 1);
    if (k == "alpha") {
      m.alpha = parse_real(line, "method.alpha", v);
      have_alpha = true;
    } else if (k == "beta" && m.kind == MethodKind::Olre) {
      m.beta = parse_real(line, "method.beta", v);
    } else if (k == "a" && m.kind == MethodKind::Olre) {
      m.a = parse_real(line, "method.a", v);
    } else if (k == "t0" && m.kind == MethodKind::Olre) {
      m.t0 = parse_int(line, "method.t0", v);
    } else if (k == "lambda" && m.kind == MethodKind::Rulsif) {
      if (v == "cv")
        m.lambda.reset();
      else
        m.lambda = parse_real(line, "method.lambda", v);
    } else if (k == "M" && m.kind == MethodKind::Rulsif) {
      m.dictionary_size = static_cast<int>(parse_int(line, "method.M", v));
    } else {
      throw config_error(line, "key \"method\": unknown parameter \"" + k + "\" for " + name);
    }
  }
  if (!have_alpha) throw config_error(line, "key \"method\": missing required alpha=...");

  if (m.kind == MethodKind::Olre) {
    if (!(m.alpha > 0.0 && m.alpha < 1.0))
      throw config_error(line, "key \"method.alpha\": olre requires alpha in (0,1)");
    if (!(m.beta >= 0.5 && m.beta <= 1.0))
      throw config_error(line, "key \"method.beta\": must be in [1/2,1]");
    if (!(m.a >= 4.0)) throw config_error(line, "key \"method.a\": must be >= 4");
    if (m.t0 < 1) throw config_error(line, "key \"method.t0\": must be >= 1");
  } else {
    if (!(m.alpha >= 0.0 && m.alpha < 1.0))
      throw config_error(line, "key \"method.alpha\": rulsif requires alpha in [0,1)");
    if (m.lambda && !(*m.lambda >= 0.0))
      throw config_error(line, "key \"method.lambda\": must be >= 0 or cv");
    if (m.dictionary_size < 1) throw config_error(line, "key \"method.M\": must be >= 1");
  }
  return m;
}

std::vector<double> parse_real_list(int line, const std::string& key, const std::string& v,
                                    bool positive) {
  std::vector<double> out;
  for (const auto& item : split(v, ',')) {
    if (item.empty()) throw config_error(line, "key \"" + key + "\": empty list entry");
    const double x = parse_real(line, key, item);
    if (positive && !(x > 0.0))
      throw config_error(line, "key \"" + key + "\": entries must be > 0");
    if (!positive && !(x >= 0.0))
      throw config_error(line, "key \"" + key + "\": entries must be >= 0");
    out.push_back(x);
  }
  if (out.empty()) throw config_error(line, "key \"" + key + "\": empty list");
  return out;
}

std::vector<std::int64_t> default_checkpoints(std::int64_t T) {
  std::vector<std::int64_t> cps;
  for (const std::int64_t c : {25, 50, 100, 200, 400, 800, 1600})
    if (c <= T) cps.push_back(c);
  if (cps.empty() || cps.back() != T) cps.push_back(T);
  return cps;
}

}  // namespace

RunConfig parse_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(0, "cannot open config file \"" + path + "\"");

  RunConfig cfg;
  bool saw_scenario = false;
  bool saw_checkpoints = false;
  std::vector<std::int64_t> checkpoints;

  std::string raw;
  int line = 0;
  int methods_line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw config_error(line, "expected key = value, got \"" + trim(raw) + "\"");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (value.empty()) throw config_error(line, "key \"" + key + "\": empty value");

    if (key == "scenario") {
      try {
        cfg.scenario = scenario_from_string(value);
      } catch (const std::invalid_argument& e) {
        throw config_error(line, std::string("key \"scenario\": ") + e.what());
      }
      saw_scenario = true;
    } else if (key == "method") {
      cfg.methods.push_back(parse_method(line, value));
      methods_line = line;
    } else if (key == "T") {
      cfg.T = parse_int(line, key, value);
      if (cfg.T < 1) throw config_error(line, "key \"T\": must be >= 1");
    } else if (key == "n_test") {
      cfg.n_test = parse_int(line, key, value);
      if (cfg.n_test < 1) throw config_error(line, "key \"n_test\": must be >= 1");
    } else if (key == "n_trials") {
      cfg.n_trials = static_cast<int>(parse_int(line, key, value));
      if (cfg.n_trials < 1) throw config_error(line, "key \"n_trials\": must be >= 1");
    } else if (key == "checkpoints") {
      checkpoints.clear();
      for (const auto& item : split(value, ','))
        checkpoints.push_back(parse_int(line, key, item));
      if (checkpoints.empty()) throw config_error(line, "key \"checkpoints\": empty list");
      for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1)
          throw config_error(line, "key \"checkpoints\": entries must be >= 1");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
          throw config_error(line, "key \"checkpoints\": must be strictly increasing");
      }
      saw_checkpoints = true;
    } else if (key == "seed") {
      cfg.base_seed = parse_uint(line, key, value);
    } else if (key == "sigma") {
      if (value == "cv") {
        cfg.sigma.reset();
      } else {
        const double s2 = parse_real(line, key, value);
        if (!(s2 > 0.0)) throw config_error(line, "key \"sigma\": must be > 0 or cv");
        cfg.sigma = s2;
      }
    } else if (key == "reuse_warmup_pairs") {
      cfg.reuse_warmup_pairs = parse_bool(line, key, value);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "warmup_n") {
      cfg.warmup_n = static_cast<int>(parse_int(line, key, value));
      if (cfg.warmup_n < 2) throw config_error(line, "key \"warmup_n\": must be >= 2");
    } else if (key == "cv_folds") {
      cfg.cv_folds = static_cast<int>(parse_int(line, key, value));
      if (cfg.cv_folds < 2) throw config_error(line, "key \"cv_folds\": must be >= 2");
    } else if (key == "cv_sigma_factors") {
      cfg.cv_sigma_factors = parse_real_list(line, key, value, /*positive=*/true);
    } else if (key == "cv_sigma_grid") {
      cfg.cv_sigma_grid = parse_real_list(line, key, value, /*positive=*/true);
    } else if (key == "cv_lambda_grid") {
      cfg.cv_lambda_grid = parse_real_list(line, key, value, /*positive=*/false);
    } else if (key == "cv_M") {
      cfg.cv_dictionary_size = static_cast<int>(parse_int(line, key, value));
      if (cfg.cv_dictionary_size < 1) throw config_error(line, "key \"cv_M\": must be >= 1");
    } else {
      throw config_error(line, "unknown key \"" + key + "\"");
    }
  }

  if (!saw_scenario) throw config_error(line, "missing required key \"scenario\"");
  if (cfg.methods.empty()) throw config_error(line, "missing required key \"method\"");
  cfg.checkpoints = saw_checkpoints ? checkpoints : default_checkpoints(cfg.T);
  for (const auto c : cfg.checkpoints)
    if (c > cfg.T) throw config_error(line, "key \"checkpoints\": entry exceeds T");
  for (const auto& m : cfg.methods)
    if (m.kind == MethodKind::Rulsif && m.dictionary_size > cfg.T)
      throw config_error(methods_line, "key \"method.M\": exceeds the number of q-samples (T)");
  return cfg;
}

std::string render_resolved_config(const RunConfig& config,
                                   const std::vector<MethodConfig>& resolved_methods) {
  std::ostringstream out;
  out << "# resolved configuration (defaults and cross-validated values made explicit)\n";
  out << "scenario = " << to_string(config.scenario) << "\n";
  for (const auto& m : resolved_methods) {
    if (m.kind == MethodKind::Olre) {
      out << "method = olre alpha=" << fmt17(m.alpha) << " beta=" << fmt17(m.beta)
          << " a=" << fmt17(m.a) << " t0=" << m.t0 << "\n";
    } else {
      out << "method = rulsif alpha=" << fmt17(m.alpha) << " lambda=" << fmt17(m.lambda)
          << " M=" << m.dictionary_size << "\n";
    }
  }
  out << "T = " << config.T << "\n";
  out << "n_test = " << config.n_test << "\n";
  out << "n_trials = " << config.n_trials << "\n";
  out << "checkpoints = ";
  for (std::size_t i = 0; i < config.checkpoints.size(); ++i)
    out << (i ? "," : "") << config.checkpoints[i];
  out << "\n";
  out << "seed = " << config.base_seed << "\n";
  if (!resolved_methods.empty()) out << "sigma = " << fmt17(resolved_methods.front().sigma) << "\n";
  out << "reuse_warmup_pairs = " << (config.reuse_warmup_pairs ? "true" : "false") << "\n";
  out << "output_dir = " << config.output_dir << "\n";
  out << "warmup_n = " << config.warmup_n << "\n";
  out << "cv_folds = " << config.cv_folds << "\n";
  out << "cv_sigma_factors = ";
  for (std::size_t i = 0; i < config.cv_sigma_factors.size(); ++i)
    out << (i ? "," : "") << fmt17(config.cv_sigma_factors[i]);
  out << "\n";
  if (!config.cv_sigma_grid.empty()) {
    out << "cv_sigma_grid = ";
    for (std::size_t i = 0; i < config.cv_sigma_grid.size(); ++i)
      out << (i ? "," : "") << fmt17(config.cv_sigma_grid[i]);
    out << "\n";
  }
  out << "cv_lambda_grid = ";
  for (std::size_t i = 0; i < config.cv_lambda_grid.size(); ++i)
    out << (i ? "," : "") << fmt17(config.cv_lambda_grid[i]);
  out << "\n";
  out << "cv_M = " << config.cv_dictionary_size << "\n";
  return out.str();
}

}  // namespace olre
