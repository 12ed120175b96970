#include "anafilt/emit.hpp"

#include "anafilt/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anafilt::emit {

namespace {

std::string node(std::size_t stage_index, const char* point) {
    return "n_" + std::to_string(stage_index) + "_" + point;
}

std::string source_line(const Analysis& analysis) {
    if (std::holds_alternative<AcAnalysis>(analysis))
        return "V1 vin 0 DC 0 AC 1\n";
    const auto& tran = std::get<TranAnalysis>(analysis);
    if (tran.f_in_hz <= 0.0) // DC step drive
        return "V1 vin 0 DC " + sig9(tran.amplitude_v) + "\n";
    const double per = 1.0 / tran.f_in_hz;
    const double edge = per * 1e-6;
    const double pw = per / 2.0 - edge;
    return "V1 vin 0 PULSE(" + sig9(-tran.amplitude_v) + " " +
           sig9(tran.amplitude_v) + " 0 " + sig9(edge) + " " + sig9(edge) +
           " " + sig9(pw) + " " + sig9(per) + ")\n";
}

std::string analysis_lines(const Analysis& analysis,
                           const std::string& out_node) {
    std::string out;
    if (const auto* ac = std::get_if<AcAnalysis>(&analysis)) {
        if (!(ac->f_lo_hz > 0.0) || !(ac->f_hi_hz > ac->f_lo_hz))
            throw std::invalid_argument(
                "ac sweep requires 0 < f_lo < f_hi");
        out += ".ac dec " + std::to_string(ac->points_per_decade) + " " +
               sig9(ac->f_lo_hz) + " " + sig9(ac->f_hi_hz) + "\n";
        out += ".print ac v(" + out_node + ")\n";
    } else {
        const auto& tran = std::get<TranAnalysis>(analysis);
        if (!(tran.duration_s > 0.0))
            throw std::invalid_argument(
                "transient analysis requires a positive duration");
        out += ".tran " + sig9(tran.duration_s / 1000.0) + " " +
               sig9(tran.duration_s) + "\n";
        out += ".print tran v(" + out_node + ")\n";
    }
    return out;
}

} // namespace

std::string netlist(const sallen_key::SallenKeyCascade& cascade,
                    const Analysis& analysis) {
    if (cascade.stages.empty())
        throw EmptyCascade("cannot emit a netlist for an empty cascade");

    std::string out = "* sallen-key low-pass cascade (anafilt)\n";
    out += source_line(analysis);

    // Each stage is buffered by an ideal op-amp: a VCVS with gain 1e6 in
    // unity feedback, so the stage output node is low-impedance and the
    // next stage cannot load this one.
    std::string in_node = "vin";
    for (std::size_t i = 0; i < cascade.stages.size(); ++i) {
        const std::size_t k = i + 1;
        const std::string tag = std::to_string(k);
        const std::string out_node = node(k, "out");
        const auto& stage = cascade.stages[i];
        if (const auto* rc = std::get_if<sallen_key::FirstOrderRC>(&stage)) {
            const std::string mid = node(k, "mid");
            out += "R" + tag + " " + in_node + " " + mid + " " +
                   sig9(rc->r_ohms) + "\n";
            out += "C" + tag + " " + mid + " 0 " + sig9(rc->c_farads) +
                   "\n";
            out += "E" + tag + " " + out_node + " 0 " + mid + " " +
                   out_node + " 1e6\n";
        } else {
            const auto& sk = std::get<sallen_key::SecondOrderSK>(stage);
            const std::string mid = node(k, "mid");
            const std::string plus = node(k, "plus");
            out += "R" + tag + "a " + in_node + " " + mid + " " +
                   sig9(sk.r_ohms) + "\n";
            out += "R" + tag + "b " + mid + " " + plus + " " +
                   sig9(sk.r_ohms) + "\n";
            out += "C" + tag + "a " + mid + " " + out_node + " " +
                   sig9(sk.c1_farads) + "\n";
            out += "C" + tag + "b " + plus + " 0 " + sig9(sk.c2_farads) +
                   "\n";
            out += "E" + tag + " " + out_node + " 0 " + plus + " " +
                   out_node + " 1e6\n";
        }
        in_node = out_node;
    }

    out += analysis_lines(analysis, in_node);
    out += ".end\n";
    return out;
}

std::string response_csv(const response::FrequencyResponse& resp) {
    std::string out = "omega_rad_s,magnitude_db,phase_deg\n";
    for (std::size_t i = 0; i < resp.grid.points.size(); ++i)
        out += sig9(resp.grid.points[i]) + "," + sig9(resp.magnitude_db[i]) +
               "," + sig9(resp.phase_deg[i]) + "\n";
    return out;
}

std::string transient_csv(const response::TransientTrace& trace) {
    std::string out = "t_s,input_v,output_v\n";
    for (std::size_t i = 0; i < trace.samples_in.size(); ++i)
        out += sig9(static_cast<double>(i) * trace.dt) + "," +
               sig9(trace.samples_in[i]) + "," + sig9(trace.samples_out[i]) +
               "\n";
    return out;
}

std::string pole_zero_json(const FilterRealization& realization) {
    std::vector<Complex> poles = realization.poles;
    std::sort(poles.begin(), poles.end(),
              [](const Complex& a, const Complex& b) {
                  if (a.real() != b.real()) return a.real() < b.real();
                  return a.imag() < b.imag();
              });

    std::string out = "{\n";
    out += "  \"family\": \"" +
           std::string(family_name(realization.family)) + "\",\n";
    out += "  \"order\": " + std::to_string(realization.order) + ",\n";
    out += "  \"char_freq\": " + sig9(realization.char_freq) + ",\n";
    out += "  \"epsilon\": " +
           (realization.epsilon ? sig9(*realization.epsilon)
                                : std::string("null")) +
           ",\n";
    if (poles.empty()) {
        out += "  \"poles\": [],\n";
    } else {
        out += "  \"poles\": [\n";
        for (std::size_t i = 0; i < poles.size(); ++i) {
            out += "    [" + sig9(poles[i].real()) + ", " +
                   sig9(poles[i].imag()) + "]";
            out += i + 1 < poles.size() ? ",\n" : "\n";
        }
        out += "  ],\n";
    }
    out += "  \"zeros\": []\n";
    out += "}\n";
    return out;
}

std::string bode_svg(std::span<const response::FrequencyResponse> responses,
                     std::span<const std::string> labels) {
    if (responses.empty())
        throw std::invalid_argument("bode plot requires >= 1 response");
    if (labels.size() != responses.size())
        throw std::invalid_argument("one label per response required");
    const auto& grid = responses.front().grid.points;
    if (grid.size() < 2)
        throw std::invalid_argument("bode plot requires >= 2 grid points");
    if (!(grid.front() > 0.0))
        throw std::invalid_argument("bode plot requires positive "
                                    "frequencies (log axis)");
    for (const auto& resp : responses) {
        if (resp.grid.points.size() != grid.size())
            throw GridMismatch("responses sampled on different grid sizes");
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (resp.grid.points[i] != grid[i])
                throw GridMismatch("responses sampled on different grids");
    }

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
    constexpr int width = 800;
    constexpr int height = 480;
    constexpr double ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    double db_min = responses[0].magnitude_db[0];
    double db_max = db_min;
    for (const auto& resp : responses)
        for (const double m : resp.magnitude_db) {
            db_min = std::min(db_min, m);
            db_max = std::max(db_max, m);
        }
    if (db_max - db_min < 1.0) { // flat curve: give the axis some room
        db_max += 1.0;
        db_min -= 1.0;
    }
    const double pad = 0.05 * (db_max - db_min);
    db_min -= pad;
    db_max += pad;

    const double lw_lo = std::log10(grid.front());
    const double lw_hi = std::log10(grid.back());
    const auto sx = [&](double w) {
        return ml + (std::log10(w) - lw_lo) / (lw_hi - lw_lo) * plot_w;
    };
    const auto sy = [&](double db) {
        return mt + (db_max - db) / (db_max - db_min) * plot_h;
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" viewBox=\"0 0 " + std::to_string(width) + " " +
           std::to_string(height) + "\">\n";
    out += "  <rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) +
           "\" fill=\"white\"/>\n";
    out += "  <rect x=\"" + sig9(ml) + "\" y=\"" + sig9(mt) +
           "\" width=\"" + sig9(plot_w) + "\" height=\"" + sig9(plot_h) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // Decade gridlines with labels.
    const int dec_lo = static_cast<int>(std::ceil(lw_lo - 1e-9));
    const int dec_hi = static_cast<int>(std::floor(lw_hi + 1e-9));
    for (int d = dec_lo; d <= dec_hi; ++d) {
        const double w = std::pow(10.0, d);
        const double x = sx(w);
        out += "  <line x1=\"" + sig9(x) + "\" y1=\"" + sig9(mt) +
               "\" x2=\"" + sig9(x) + "\" y2=\"" + sig9(mt + plot_h) +
               "\" stroke=\"#dddddd\"/>\n";
        out += "  <text x=\"" + sig9(x) + "\" y=\"" +
               sig9(mt + plot_h + 18.0) +
               "\" font-size=\"12\" text-anchor=\"middle\" "
               "fill=\"#333333\">1e" +
               std::to_string(d) + "</text>\n";
    }

    // Five evenly spaced horizontal gridlines with dB labels.
    for (int i = 0; i <= 4; ++i) {
        const double db = db_max - (db_max - db_min) * i / 4.0;
        const double y = sy(db);
        out += "  <line x1=\"" + sig9(ml) + "\" y1=\"" + sig9(y) +
               "\" x2=\"" + sig9(ml + plot_w) + "\" y2=\"" + sig9(y) +
               "\" stroke=\"#dddddd\"/>\n";
        out += "  <text x=\"" + sig9(ml - 6.0) + "\" y=\"" +
               sig9(y + 4.0) +
               "\" font-size=\"12\" text-anchor=\"end\" "
               "fill=\"#333333\">" +
               sig9(std::round(db * 10.0) / 10.0) + "</text>\n";
    }

    out += "  <text x=\"" + sig9(ml + plot_w / 2.0) + "\" y=\"" +
           sig9(static_cast<double>(height) - 10.0) +
           "\" font-size=\"13\" text-anchor=\"middle\" "
           "fill=\"#333333\">omega (rad/s)</text>\n";
    out += "  <text x=\"16\" y=\"" + sig9(mt + plot_h / 2.0) +
           "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#333333\" "
           "transform=\"rotate(-90 16 " +
           sig9(mt + plot_h / 2.0) + ")\">magnitude (dB)</text>\n";

    for (std::size_t r = 0; r < responses.size(); ++r) {
        const char* color = palette[r % (sizeof palette / sizeof *palette)];
        std::string pts;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!pts.empty()) pts += " ";
            pts += sig9(sx(grid[i])) + "," +
                   sig9(sy(std::clamp(responses[r].magnitude_db[i], db_min,
                                      db_max)));
        }
        out += "  <polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";

        const double ly = mt + 16.0 + 16.0 * static_cast<double>(r);
        out += "  <line x1=\"" + sig9(ml + plot_w - 150.0) + "\" y1=\"" +
               sig9(ly - 4.0) + "\" x2=\"" + sig9(ml + plot_w - 125.0) +
               "\" y2=\"" + sig9(ly - 4.0) + "\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"2\"/>\n";
        out += "  <text x=\"" + sig9(ml + plot_w - 120.0) + "\" y=\"" +
               sig9(ly) + "\" font-size=\"12\" fill=\"#333333\">" +
               labels[r] + "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

} // namespace anafilt::emit
