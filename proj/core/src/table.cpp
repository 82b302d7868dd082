#include "ganlab/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "ganlab/error.hpp"

namespace ganlab {

ResultTable::ResultTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw Error(ErrorCode::BadValue, "empty table header");
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != header_.size()) {
    throw Error(ErrorCode::BadValue, "row arity does not match header");
  }
  rows_.push_back(std::move(row));
}

void ResultTable::add_meta(const std::string& key, const std::string& value) {
  meta_.emplace_back(key, value);
}

int ResultTable::column(const std::string& name) const {
  auto it = std::find(header_.begin(), header_.end(), name);
  return it == header_.end() ? -1 : static_cast<int>(it - header_.begin());
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

void write_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadValue, "cannot open " + path + " for writing");
  for (const auto& [key, value] : table.meta()) {
    out << "# " << key << " = " << value << "\n";
  }
  for (size_t i = 0; i < table.header().size(); ++i) {
    if (i) out << ",";
    out << table.header()[i];
  }
  out << "\n";
  for (const auto& row : table.rows()) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_double(row[i]);
    }
    out << "\n";
  }
}

namespace {

struct Range {
  double lo = 0.0, hi = 1.0;
  void grow(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

constexpr int kWidth = 640, kHeight = 440, kMargin = 56;

double map_x(double v, const Range& r) {
  return kMargin + (v - r.lo) / (r.hi - r.lo + 1e-300) * (kWidth - 2 * kMargin);
}
double map_y(double v, const Range& r) {
  return kHeight - kMargin - (v - r.lo) / (r.hi - r.lo + 1e-300) * (kHeight - 2 * kMargin);
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#e377c2"};

}  // namespace

void write_svg(const ResultTable& table, const std::string& path, PlotKind kind) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadValue, "cannot open " + path + " for writing");

  const auto& rows = table.rows();
  const int cols = static_cast<int>(table.header().size());
  const bool loglog = kind == PlotKind::LogLogScatter;

  auto tx = [&](double v) { return loglog && v > 0 ? std::log10(v) : v; };

  Range rx, ry;
  bool first = true;
  for (const auto& row : rows) {
    for (int c = 1; c < cols; ++c) {
      if (loglog && (row[0] <= 0 || row[c] <= 0)) continue;
      if (first) {
        rx = {tx(row[0]), tx(row[0])};
        ry = {tx(row[c]), tx(row[c])};
        first = false;
      }
      rx.grow(tx(row[0]));
      ry.grow(tx(row[c]));
    }
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << table.header()[0]
      << (loglog ? " (log10)" : "") << "</text>\n";

  for (int c = 1; c < cols; ++c) {
    const char* color = kColors[(c - 1) % 7];
    if (kind == PlotKind::TimeSeries) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
      for (const auto& row : rows) {
        out << map_x(tx(row[0]), rx) << "," << map_y(tx(row[c]), ry) << " ";
      }
      out << "\"/>\n";
    } else {
      for (const auto& row : rows) {
        if (row[0] <= 0 || row[c] <= 0) continue;
        out << "<circle cx=\"" << map_x(tx(row[0]), rx) << "\" cy=\""
            << map_y(tx(row[c]), ry) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    out << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << kMargin + 16 * c
        << "\" font-size=\"11\" fill=\"" << color << "\">" << table.header()[c]
        << "</text>\n";
  }

  // Fitted line from metadata, when a rate fit was recorded.
  if (loglog) {
    double slope = 0, intercept = 0;
    bool have = false;
    for (const auto& [k, v] : table.meta()) {
      if (k == "fit.loglog_slope") {
        slope = std::stod(v);
        have = true;
      }
      if (k == "fit.loglog_intercept") intercept = std::stod(v);
    }
    if (have) {
      double x0 = rx.lo, x1 = rx.hi;
      out << "<line x1=\"" << map_x(x0, rx) << "\" y1=\""
          << map_y(slope * x0 + intercept, ry) << "\" x2=\"" << map_x(x1, rx)
          << "\" y2=\"" << map_y(slope * x1 + intercept, ry)
          << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace ganlab
