// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace testutil {

struct CliResult {
    int exit_code;
    std::string out;
};

/// Run the CLI binary with the given argument string, capturing stdout.
/// Set merge_stderr to also capture diagnostics.
inline CliResult run_cli(const std::string& args, bool merge_stderr = false,
                         const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") +
                            "'" + GRIDPPP_CLI_PATH + "' " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) throw std::runtime_error("popen failed");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, n);
    const int status = ::pclose(p);
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, out};
}

/// Two-sided Kolmogorov–Smirnov statistic of a sample against a CDF.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

}  // namespace testutil
