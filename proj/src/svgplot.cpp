#include "groklab/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "groklab/ioutil.hpp"

namespace groklab {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool valid() const { return lo <= hi; }
    void pad() {
        if (lo == hi) {
            lo -= 1.0;
            hi += 1.0;
        }
    }
};

}  // namespace

void emit_plot(const std::vector<Series>& series, const std::filesystem::path& path,
               const PlotOptions& opts) {
    if (series.empty()) throw std::invalid_argument("emit_plot: no series");
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("emit_plot: series '" + s.name + "' length mismatch");
        if (s.x.empty())
            throw std::invalid_argument("emit_plot: series '" + s.name + "' is empty");
        std::string bad;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                if (!bad.empty()) bad += ", ";
                bad += std::to_string(i);
            }
        }
        if (!bad.empty())
            throw std::invalid_argument("emit_plot: series '" + s.name +
                                        "' has non-finite values at indices " + bad);
        if (opts.log_x)
            for (double x : s.x)
                if (x <= 0.0)
                    throw std::invalid_argument("emit_plot: log-x requires positive x in '" +
                                                s.name + "'");
    }

    auto tx = [&](double x) { return opts.log_x ? std::log10(x) : x; };

    Range xr, yl, yr;
    bool has_right = false;
    for (const auto& s : series) {
        for (double x : s.x) xr.include(tx(x));
        for (double y : s.y) (s.right_axis ? yr : yl).include(y);
        has_right = has_right || s.right_axis;
    }
    if (!yl.valid()) yl = yr;  // all series on the right scale
    xr.pad();
    yl.pad();
    if (has_right) yr.pad();

    const double W = opts.width, H = opts.height;
    const double ml = 64, mr = has_right ? 64 : 24, mt = opts.title.empty() ? 24 : 44, mb = 44;
    const double pw = W - ml - mr, ph = H - mt - mb;
    auto px = [&](double x) { return ml + (tx(x) - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y, const Range& r) { return mt + (r.hi - y) / (r.hi - r.lo) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
       << opts.height << "\" viewBox=\"0 0 " << opts.width << " " << opts.height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opts.title.empty())
        os << "<text x=\"" << fmt2(W / 2) << "\" y=\"24\" text-anchor=\"middle\" "
              "font-family=\"sans-serif\" font-size=\"16\">"
           << opts.title << "</text>\n";

    // Frame and ticks.
    os << "<rect x=\"" << fmt2(ml) << "\" y=\"" << fmt2(mt) << "\" width=\"" << fmt2(pw)
       << "\" height=\"" << fmt2(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
        const double gx = ml + pw * i / kTicks;
        const double label = opts.log_x ? std::pow(10.0, fx) : fx;
        os << "<line x1=\"" << fmt2(gx) << "\" y1=\"" << fmt2(mt + ph) << "\" x2=\"" << fmt2(gx)
           << "\" y2=\"" << fmt2(mt + ph + 5) << "\" stroke=\"#333\"/>\n"
           << "<text x=\"" << fmt2(gx) << "\" y=\"" << fmt2(mt + ph + 18)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt_tick(label) << "</text>\n";

        const double fy = yl.lo + (yl.hi - yl.lo) * i / kTicks;
        const double gy = mt + ph - ph * i / kTicks;
        os << "<text x=\"" << fmt2(ml - 6) << "\" y=\"" << fmt2(gy + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt_tick(fy) << "</text>\n";
        if (has_right) {
            const double fy2 = yr.lo + (yr.hi - yr.lo) * i / kTicks;
            os << "<text x=\"" << fmt2(ml + pw + 6) << "\" y=\"" << fmt2(gy + 4)
               << "\" text-anchor=\"start\" font-family=\"sans-serif\" font-size=\"11\">"
               << fmt_tick(fy2) << "</text>\n";
        }
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const Range& r = s.right_axis ? yr : yl;
        os << "<polyline fill=\"none\" stroke=\"" << kPalette[si % 8]
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) os << ' ';
            os << fmt2(px(s.x[i])) << ',' << fmt2(py(s.y[i], r));
        }
        os << "\"/>\n";
    }

    // Legend.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const double ly = mt + 16 + 16 * static_cast<double>(si);
        os << "<line x1=\"" << fmt2(ml + 10) << "\" y1=\"" << fmt2(ly - 4) << "\" x2=\""
           << fmt2(ml + 34) << "\" y2=\"" << fmt2(ly - 4) << "\" stroke=\"" << kPalette[si % 8]
           << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << fmt2(ml + 40) << "\" y=\"" << fmt2(ly)
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[si].name
           << (series[si].right_axis ? " (right)" : "") << "</text>\n";
    }
    os << "</svg>\n";
    write_file_atomic(path, os.str());
}

}  // namespace groklab
