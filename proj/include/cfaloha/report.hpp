#ifndef CFALOHA_REPORT_HPP
#define CFALOHA_REPORT_HPP

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "cfaloha/simulation.hpp"

namespace cfaloha {

inline constexpr const char* kCsvHeader =
    "network,sweep_axis,axis_value,L,N,K,pi,trials,seed,mean_throughput_bps,stderr_bps";

/// Shortest round-trip fixed-point form (no exponent), independent of the
/// global locale.
std::string format_number(double value);

/// Header plus one row per result. Throws std::invalid_argument on empty input.
void write_csv(const std::vector<ThroughputResult>& results, std::ostream& out);

/// Writes the CSV to `destination`. Empty input is rejected before the file
/// is touched; I/O failures throw std::runtime_error.
void emit_csv(const std::vector<ThroughputResult>& results, const std::filesystem::path& destination);

/// Line chart of mean throughput against the sweep axis with +-1 SE bars,
/// one series per network.
void write_svg(const std::vector<ThroughputResult>& results, std::ostream& out,
               const std::string& title);
void emit_svg(const std::vector<ThroughputResult>& results, const std::filesystem::path& destination,
              const std::string& title);

}  // namespace cfaloha

#endif  // CFALOHA_REPORT_HPP
