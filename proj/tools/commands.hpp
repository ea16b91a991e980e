#pragma once

#include <string>

#include "lsh/config.hpp"

namespace lsh::cli {

inline constexpr const char* kToolVersion = "lsh 0.1.0";

int cmd_simulate(RunConfig& config);
int cmd_fit(RunConfig& config, int chains);
int cmd_predict(RunConfig& config);
int cmd_theory(RunConfig& config);
int cmd_summarize(RunConfig& config);
int cmd_init(RunConfig& config);

} // namespace lsh::cli
