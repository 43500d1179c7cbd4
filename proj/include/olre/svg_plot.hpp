#pragma once

#include <string>

#include "olre/csv.hpp"

namespace olre {

// Renders an aggregate-CSV table (schema:
// scenario,method,alpha,beta,t,mean_error,std_error,n_trials) as a static
// log-log SVG: one curve per method entry plus a +-1 std band. Throws
// std::invalid_argument on schema violations or when there is nothing to
// plot.
std::string render_error_plot(const CsvTable& table);

}  // namespace olre
