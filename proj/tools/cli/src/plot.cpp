#include "hatano/cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "hatano/errors.hpp"

namespace hatano::cli {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  if (std::abs(x) < 1e-12) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

// Viridis-like ramp through five anchors.
std::string ramp(double t) {
  static const double c[5][3] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(t));
  const double f = t - i;
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(c[i][0] + f * (c[i + 1][0] - c[i][0])),
                static_cast<int>(c[i][1] + f * (c[i + 1][1] - c[i][1])),
                static_cast<int>(c[i][2] + f * (c[i + 1][2] - c[i][2])));
  return buf;
}

class Figure {
 public:
  Figure(double x0, double x1, double y0, double y1) {
    auto widen = [](double& a, double& b) {
      if (!(b > a)) {
        const double d = std::max(1.0, std::abs(a)) * 0.5;
        a -= d;
        b += d;
      }
      const double pad = 0.04 * (b - a);
      a -= pad;
      b += pad;
    };
    widen(x0, x1);
    widen(y0, y1);
    x0_ = x0, x1_ = x1, y0_ = y0, y1_ = y1;
  }

  double px(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0_) / (y1_ - y0_) * (kHeight - kTop - kBottom); }

  void point(double x, double y, const std::string& colour) {
    body_ << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"2.2\" fill=\"" << colour
          << "\" fill-opacity=\"0.75\"/>\n";
  }

  void line(const std::vector<std::pair<double, double>>& pts, const std::string& colour, double width,
            bool dashed = false, double opacity = 1.0) {
    if (pts.size() < 2) return;
    body_ << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << num(width)
          << "\" stroke-opacity=\"" << num(opacity) << "\"" << (dashed ? " stroke-dasharray=\"5,4\"" : "")
          << " points=\"";
    for (const auto& [x, y] : pts) body_ << num(px(x)) << ',' << num(py(y)) << ' ';
    body_ << "\"/>\n";
  }

  void rect(double xa, double xb, double ya, double yb, const std::string& colour) {
    body_ << "<rect x=\"" << num(px(xa)) << "\" y=\"" << num(py(yb)) << "\" width=\"" << num(px(xb) - px(xa))
          << "\" height=\"" << num(py(ya) - py(yb)) << "\" fill=\"" << colour << "\" stroke=\"white\"/>\n";
  }

  void legend(int row, const std::string& colour, const std::string& text, bool dashed = false) {
    const double y = kTop + 14 + 16 * row;
    const double x = kWidth - kRight - 190;
    body_ << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x + 22) << "\" y2=\"" << num(y)
          << "\" stroke=\"" << colour << "\" stroke-width=\"2\"" << (dashed ? " stroke-dasharray=\"5,4\"" : "")
          << "/>\n<text x=\"" << num(x + 28) << "\" y=\"" << num(y + 4) << "\">" << escape(text) << "</text>\n";
  }

  std::string render(const std::string& title, const std::string& xlabel, const std::string& ylabel) const {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
    const double sx = nice_step(x1_ - x0_, 8), sy = nice_step(y1_ - y0_, 6);
    for (double t = std::ceil(x0_ / sx) * sx; t <= x1_; t += sx)
      s << "<line x1=\"" << num(px(t)) << "\" y1=\"" << kTop << "\" x2=\"" << num(px(t)) << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"#e4e4e4\"/>\n<text x=\"" << num(px(t)) << "\" y=\""
        << kHeight - kBottom + 16 << "\" text-anchor=\"middle\">" << label(t) << "</text>\n";
    for (double t = std::ceil(y0_ / sy) * sy; t <= y1_; t += sy)
      s << "<line x1=\"" << kLeft << "\" y1=\"" << num(py(t)) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
        << num(py(t)) << "\" stroke=\"#e4e4e4\"/>\n<text x=\"" << kLeft - 6 << "\" y=\"" << num(py(t) + 4)
        << "\" text-anchor=\"end\">" << label(t) << "</text>\n";
    s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight << "\" height=\""
      << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"#444\"/>\n";
    s << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 14 << "\" text-anchor=\"middle\">"
      << escape(xlabel) << "</text>\n";
    s << "<text transform=\"translate(18 " << (kTop + kHeight - kBottom) / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(ylabel) << "</text>\n";
    s << body_.str() << "</svg>\n";
    return s.str();
  }

 private:
  static constexpr int kWidth = 720, kHeight = 500, kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;
  double x0_, x1_, y0_, y1_;
  std::ostringstream body_;
};

std::vector<double> column(const CsvTable& t, std::string_view name) {
  const std::size_t c = t.column(name);
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (const auto& r : t.rows) out.push_back(parse_double(r[c]));
  return out;
}

std::pair<double, double> finite_range(const std::vector<double>& xs) {
  double lo = INFINITY, hi = -INFINITY;
  for (double x : xs)
    if (std::isfinite(x)) lo = std::min(lo, x), hi = std::max(hi, x);
  if (!(lo <= hi)) return {0.0, 1.0};
  return {lo, hi};
}

}  // namespace

std::string spectrum_svg(const CsvTable& table, const std::string& title) {
  const auto g = column(table, "g"), re = column(table, "re"), im = column(table, "im");
  const auto [x0, x1] = finite_range(re);
  const auto [y0, y1] = finite_range(im);
  const auto [g0, g1] = finite_range(g);
  Figure f(x0, x1, std::min(y0, -0.05), std::max(y1, 0.05));
  std::vector<double> levels(g);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (std::size_t i = 0; i < re.size(); ++i)
    if (std::isfinite(re[i]) && std::isfinite(im[i]))
      f.point(re[i], im[i], ramp(g1 > g0 ? (g[i] - g0) / (g1 - g0) : 0.0));
  if (levels.size() <= 8)
    for (std::size_t k = 0; k < levels.size(); ++k)
      f.legend(static_cast<int>(k), ramp(g1 > g0 ? (levels[k] - g0) / (g1 - g0) : 0.0), "g = " + label(levels[k]));
  return f.render(title, "Re z", "Im z");
}

std::string rate_svg(const CsvTable& table) {
  const std::size_t cs = table.column("sample_id"), cj = table.column("j");
  const auto g = column(table, "g"), rate = column(table, "rate"), pred = column(table, "predicted");
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < table.rows.size(); ++i) groups[{table.rows[i][cs], table.rows[i][cj]}].push_back(i);

  std::vector<double> ys;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::isfinite(rate[i])) ys.push_back(rate[i]), ys.push_back(pred[i]);
  const auto [x0, x1] = finite_range(g);
  const auto [y0, y1] = finite_range(ys);
  Figure f(std::min(0.0, x0), x1, std::min(0.0, y0), y1);
  const double opacity = groups.size() > 50 ? 0.25 : 0.7;
  for (const auto& [key, idx] : groups) {
    std::vector<std::pair<double, double>> measured, predicted;
    for (std::size_t i : idx) {
      if (std::isfinite(rate[i])) measured.emplace_back(g[i], rate[i]);
      predicted.emplace_back(g[i], pred[i]);
    }
    f.line(predicted, "#d62728", 1.0, true, opacity);
    f.line(measured, "#1f77b4", 1.2, false, opacity);
  }
  f.legend(0, "#1f77b4", "measured rate");
  f.legend(1, "#d62728", "gamma - g (slope -1)", true);
  return f.render("Eigenvalue displacement rate", "g", "-(1/n) log|lambda_j(g) - lambda_j(0)|");
}

std::string histogram_svg(const std::vector<double>& values, const std::string& title, const std::string& xlabel,
                          double reference) {
  std::vector<double> xs;
  for (double v : values)
    if (std::isfinite(v)) xs.push_back(v);
  if (xs.empty()) throw InvalidArgument("histogram: no finite values");
  auto [lo, hi] = finite_range(xs);
  if (std::isfinite(reference)) lo = std::min(lo, reference), hi = std::max(hi, reference);
  if (!(hi > lo)) lo -= 0.5, hi += 0.5;
  const std::size_t bins = std::clamp<std::size_t>(static_cast<std::size_t>(std::sqrt(xs.size())), 5, 40);
  const double w = (hi - lo) / bins;
  std::vector<std::size_t> counts(bins, 0);
  for (double x : xs) ++counts[std::min(bins - 1, static_cast<std::size_t>((x - lo) / w))];
  const double top = static_cast<double>(*std::max_element(counts.begin(), counts.end()));
  Figure f(lo, hi, 0.0, top);
  for (std::size_t b = 0; b < bins; ++b)
    if (counts[b] > 0) f.rect(lo + b * w, lo + (b + 1) * w, 0.0, static_cast<double>(counts[b]), "#4c72b0");
  if (std::isfinite(reference)) {
    f.line({{reference, 0.0}, {reference, top}}, "#d62728", 1.5, true);
    f.legend(0, "#d62728", "reference " + label(reference), true);
  }
  return f.render(title, xlabel, "count");
}

}  // namespace hatano::cli
