#include "cfaloha/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace cfaloha {

std::string format_number(double value) {
  std::array<char, 400> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

void write_csv(const std::vector<ThroughputResult>& results, std::ostream& out) {
  if (results.empty()) throw std::invalid_argument("no results to write");
  out << kCsvHeader << '\n';
  for (const auto& r : results) {
    out << to_string(r.network) << ',' << to_string(r.sweep_axis) << ','
        << format_number(r.axis_value) << ',' << r.num_aps << ',' << r.antennas_per_ap << ','
        << r.num_users << ',' << format_number(r.pi) << ',' << r.trials << ',' << r.seed << ','
        << format_number(r.mean_bps) << ',' << format_number(r.stderr_bps) << '\n';
  }
}

void emit_csv(const std::vector<ThroughputResult>& results, const std::filesystem::path& destination) {
  if (results.empty()) throw std::invalid_argument("no results to write");
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + destination.string() + " for writing");
  write_csv(results, out);
  out.flush();
  if (!out) throw std::runtime_error("write to " + destination.string() + " failed");
}

void write_svg(const std::vector<ThroughputResult>& results, std::ostream& out,
               const std::string& title) {
  if (results.empty()) throw std::invalid_argument("no results to plot");
  constexpr double kWidth = 720, kHeight = 480, kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
  const bool log_x = results.front().sweep_axis == SweepAxis::kN ||
                     results.front().sweep_axis == SweepAxis::kL;
  auto xval = [&](double v) { return log_x ? std::log2(v) : v; };

  double xmin = xval(results.front().axis_value), xmax = xmin, ymax = 0.0;
  for (const auto& r : results) {
    xmin = std::min(xmin, xval(r.axis_value));
    xmax = std::max(xmax, xval(r.axis_value));
    ymax = std::max(ymax, (r.mean_bps + r.stderr_bps) / 1e6);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax <= 0.0) ymax = 1.0;
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (xval(v) - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double mbps) { return kTop + plot_h - mbps / (ymax * 1.05) * plot_h; };

  std::map<Network, std::vector<const ThroughputResult*>> series;
  for (const auto& r : results) series[r.network].push_back(&r);
  static constexpr std::array<const char*, 4> kColors{"#1f77b4", "#2ca02c", "#d62728", "#9467bd"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\">" << title << "</text>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double mbps = ymax * 1.05 * i / 5.0;
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(mbps) + 4 << "\" text-anchor=\"end\">"
        << format_number(std::round(mbps * 10.0) / 10.0) << "</text>\n";
  }
  std::vector<double> ticks;
  for (const auto& r : series.begin()->second) ticks.push_back(r->axis_value);
  for (double t : ticks) {
    out << "<text x=\"" << px(t) << "\" y=\"" << kTop + plot_h + 18 << "\" text-anchor=\"middle\">"
        << format_number(t) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\">" << to_string(results.front().sweep_axis) << "</text>\n";
  out << "<text transform=\"translate(20," << kTop + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">sum-throughput (Mbit/s)</text>\n";

  std::size_t index = 0;
  for (const auto& [network, points] : series) {
    const char* color = kColors[index % kColors.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto* r : points) out << px(r->axis_value) << ',' << py(r->mean_bps / 1e6) << ' ';
    out << "\"/>\n";
    for (const auto* r : points) {
      const double x = px(r->axis_value);
      out << "<line x1=\"" << x << "\" y1=\"" << py((r->mean_bps - r->stderr_bps) / 1e6)
          << "\" x2=\"" << x << "\" y2=\"" << py((r->mean_bps + r->stderr_bps) / 1e6)
          << "\" stroke=\"" << color << "\"/>\n";
      out << "<circle cx=\"" << x << "\" cy=\"" << py(r->mean_bps / 1e6) << "\" r=\"3\" fill=\""
          << color << "\"/>\n";
    }
    const double ly = kTop + 20.0 + 20.0 * static_cast<double>(index);
    out << "<line x1=\"" << kLeft + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + plot_w + 40 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + plot_w + 45 << "\" y=\"" << ly + 4 << "\">" << to_string(network)
        << "</text>\n";
    ++index;
  }
  out << "</svg>\n";
}

void emit_svg(const std::vector<ThroughputResult>& results, const std::filesystem::path& destination,
              const std::string& title) {
  if (results.empty()) throw std::invalid_argument("no results to plot");
  std::ofstream out(destination, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + destination.string() + " for writing");
  write_svg(results, out, title);
  if (!out) throw std::runtime_error("write to " + destination.string() + " failed");
}

}  // namespace cfaloha
