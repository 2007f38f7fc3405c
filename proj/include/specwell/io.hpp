#pragma once

// Deterministic table and figure emission: CSV with a header row and 17
// significant digits, JSON with a schema_version field, self-contained SVG
// 1.1. Files are written atomically (temp file, then rename).

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "specwell/types.hpp"

namespace specwell {

inline std::string fmt17(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, p);
}

using CsvCell = std::variant<std::string, double, long>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;

  void add_row(std::vector<CsvCell> r) { rows.push_back(std::move(r)); }

  std::string str() const {
    std::string out;
    auto emit_field = [&](const std::string& s) {
      if (s.find_first_of(",\"\n") != std::string::npos) {
        out += '"';
        for (char c : s) {
          if (c == '"') out += '"';
          out += c;
        }
        out += '"';
      } else {
        out += s;
      }
    };
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      emit_field(header[i]);
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        if (std::holds_alternative<double>(row[i]))
          out += fmt17(std::get<double>(row[i]));
        else if (std::holds_alternative<long>(row[i]))
          out += std::to_string(std::get<long>(row[i]));
        else
          emit_field(std::get<std::string>(row[i]));
      }
      out += '\n';
    }
    return out;
  }
};

inline nlohmann::json json_complex(Complex z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

inline nlohmann::json json_document() {
  nlohmann::json j;
  j["schema_version"] = 1;
  return j;
}

inline void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
  }
  fs::rename(tmp, target);
}

// Minimal self-contained SVG line/point plot.
class SvgPlot {
 public:
  SvgPlot(double w, double h) : w_(w), h_(h) {}

  void set_view(double x0, double x1, double y0, double y1) {
    x0_ = x0; x1_ = x1; y0_ = y0; y1_ = y1;
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                double width = 1.0) {
    if (pts.size() < 2) return;
    body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
             fmt17(width) + "\" points=\"";
    for (auto [x, y] : pts) body_ += fmt17(px(x)) + "," + fmt17(py(y)) + " ";
    body_ += "\"/>\n";
  }

  void point(double x, double y, const std::string& color, double r = 2.5) {
    body_ += "<circle cx=\"" + fmt17(px(x)) + "\" cy=\"" + fmt17(py(y)) + "\" r=\"" +
             fmt17(r) + "\" fill=\"" + color + "\"/>\n";
  }

  void text(double x, double y, const std::string& s) {
    body_ += "<text x=\"" + fmt17(px(x)) + "\" y=\"" + fmt17(py(y)) +
             "\" font-family=\"monospace\" font-size=\"11\">" + s + "</text>\n";
  }

  void axes() {
    if (x0_ < 0 && x1_ > 0)
      polyline({{0, y0_}, {0, y1_}}, "#999", 0.7);
    if (y0_ < 0 && y1_ > 0)
      polyline({{x0_, 0}, {x1_, 0}}, "#999", 0.7);
  }

  std::string str() const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt17(w_) +
           "\" height=\"" + fmt17(h_) + "\" viewBox=\"0 0 " + fmt17(w_) + " " + fmt17(h_) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += body_;
    out += "</svg>\n";
    return out;
  }

 private:
  double px(double x) const { return margin_ + (x - x0_) / (x1_ - x0_) * (w_ - 2 * margin_); }
  double py(double y) const { return h_ - margin_ - (y - y0_) / (y1_ - y0_) * (h_ - 2 * margin_); }

  double w_, h_;
  double x0_ = 0, x1_ = 1, y0_ = 0, y1_ = 1;
  double margin_ = 40.0;
  std::string body_;
};

}  // namespace specwell
