// anafilt — analog Butterworth / Chebyshev-I low-pass designer.
//
// Subcommands: design, respond, simulate, synth, netlist, compare.
// Exit codes: 0 success, 2 specification/usage error, 3 I/O error.

#include "anafilt/butterworth.hpp"
#include "anafilt/chebyshev.hpp"
#include "anafilt/emit.hpp"
#include "anafilt/model.hpp"
#include "anafilt/numfmt.hpp"
#include "anafilt/report.hpp"
#include "anafilt/response.hpp"
#include "anafilt/sallen_key.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

namespace {

using namespace anafilt;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Stdout when path is empty, else the named file.
void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write to " + path + " failed");
}

// ---------------------------------------------------------------------------
// Shared flag groups
// ---------------------------------------------------------------------------

struct SpecFlags {
    std::string family = "butterworth";
    double ap = 0.0;
    double wp = 0.0;
    double as = 0.0;
    double ws = 0.0;
    std::string corner = "passband";
    bool hz = false;
    std::string config_path;

    double freq_scale() const {
        return hz ? 2.0 * std::numbers::pi : 1.0;
    }
};

void add_spec_flags(CLI::App* sub, SpecFlags& f, bool with_family) {
    if (with_family)
        sub->add_option("--family", f.family,
                        "filter family: butterworth|cheby1")
            ->required()
            ->check(CLI::IsMember({"butterworth", "cheby1"}));
    sub->add_option("--ap", f.ap, "max passband attenuation, dB")
        ->required();
    sub->add_option("--wp", f.wp, "passband edge (rad/s; Hz with --hz)")
        ->required();
    sub->add_option("--as", f.as, "min stopband attenuation, dB")
        ->required();
    sub->add_option("--ws", f.ws, "stopband edge (rad/s; Hz with --hz)")
        ->required();
    if (with_family)
        sub->add_option("--corner", f.corner,
                        "which corner the butterworth cutoff hits exactly")
            ->check(CLI::IsMember({"passband", "stopband"}));
    sub->add_flag("--hz", f.hz, "interpret frequency inputs as Hz");
    sub->add_option("--config", f.config_path,
                    "key=value file of flag defaults; explicit flags win");
}

// Expands a key=value config file into synthetic --key=value tokens before
// the parse. CLI11 only processes config files attached to the top-level
// app, never a subcommand's, so the file would otherwise be read after the
// subcommand's required options have already failed. Flags given explicitly
// on the command line win over file values.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);

    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);

    const auto given = [&](const std::string& flag) {
        return std::any_of(args.begin(), args.end(),
                           [&](const std::string& a) {
                               return a == flag ||
                                      a.rfind(flag + "=", 0) == 0;
                           });
    };
    const auto strip = [](const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string{};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };

    std::string line;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not key=value: " +
                                        line);
        const std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line has an empty key: " +
                                        line);
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        const std::string flag = "--" + key;
        if (!given(flag)) args.push_back(flag + "=" + value);
    }
    return args;
}

struct Design {
    FilterSpecification spec;
    FilterRealization realization;
    TransferFunction tf;
};

Design make_design(const SpecFlags& f) {
    const double scale = f.freq_scale();
    const FilterSpecification spec =
        validate_spec(f.ap, f.wp * scale, f.as, f.ws * scale);
    FilterRealization realization;
    if (f.family == "butterworth") {
        const auto rule = f.corner == "stopband"
                              ? butterworth::CornerRule::Stopband
                              : butterworth::CornerRule::Passband;
        realization = butterworth::design(spec, rule);
    } else {
        if (f.corner == "stopband")
            throw std::invalid_argument(
                "--corner stopband applies only to the butterworth family");
        realization = cheby1::design(spec);
    }
    return Design{spec, realization, stages_from_poles(realization)};
}

double max_pole_magnitude(const FilterRealization& realization) {
    double m = 0.0;
    for (const Complex& p : realization.poles)
        m = std::max(m, std::abs(p));
    return m;
}

// ---------------------------------------------------------------------------
// Subcommand state
// ---------------------------------------------------------------------------

struct DesignCmd {
    SpecFlags spec;
    bool as_json = false;
    bool as_text = false;
    std::string output;
};

struct RespondCmd {
    SpecFlags spec;
    double grid_lo = 0.0;
    double grid_hi = 0.0;
    int points = 500;
    bool normalize = false;
    std::string output;
    std::string svg;
};

struct SimulateCmd {
    SpecFlags spec;
    double fin_hz = 0.0;
    double amp = 1.0;
    double duration = 0.0; // 0 = auto (20 input periods)
    double dt = 0.0;       // 0 = auto (finest resolution guard)
    std::string output;
};

struct SynthCmd {
    SpecFlags spec;
    double r_ohms = 10e3;
    double c_first = 100e-9;
    std::string series = "none";
    bool as_json = false;
    std::string output;
};

struct NetlistCmd {
    SynthCmd synth;
    std::string analysis = "ac";
    double f_lo_hz = 0.1;
    double f_hi_hz = 1000.0;
    double fin_hz = 0.0;
    double amp = 1.0;
    double duration = 0.0; // 0 = auto (20 input periods)
};

struct CompareCmd {
    SpecFlags spec;
    double grid_lo = 0.0; // 0 = auto (wp/10)
    double grid_hi = 0.0; // 0 = auto (ws*10)
    int points = 500;
    double band_lo = 0.0; // 0 = auto (wp)
    double band_hi = 0.0; // 0 = auto (2*wp)
    std::string csv;
    std::string svg;
};

sallen_key::ESeries parse_series(const std::string& name) {
    if (name == "e24") return sallen_key::ESeries::E24;
    if (name == "e96") return sallen_key::ESeries::E96;
    return sallen_key::ESeries::None;
}

// ---------------------------------------------------------------------------
// Subcommand actions
// ---------------------------------------------------------------------------

void run_design(const DesignCmd& cmd) {
    const Design d = make_design(cmd.spec);
    const DesignReport report = build_report(d.spec, d.realization, d.tf);
    write_output(cmd.as_json ? report_to_json(report)
                             : report_to_text(report),
                 cmd.output);
}

void run_respond(const RespondCmd& cmd) {
    const Design d = make_design(cmd.spec);
    const double scale = cmd.spec.freq_scale();
    const auto grid = response::log_grid(cmd.grid_lo * scale,
                                         cmd.grid_hi * scale, cmd.points);
    auto resp = response::sample_response(d.tf, grid);
    if (cmd.normalize) {
        double peak = resp.magnitude_db.front();
        for (const double m : resp.magnitude_db) peak = std::max(peak, m);
        for (double& m : resp.magnitude_db) m -= peak;
    }
    write_output(emit::response_csv(resp), cmd.output);
    if (!cmd.svg.empty()) {
        const std::string label{family_name(d.realization.family)};
        write_output(emit::bode_svg({&resp, 1}, {&label, 1}), cmd.svg);
    }
}

void run_simulate(const SimulateCmd& cmd) {
    const Design d = make_design(cmd.spec);
    const double max_pole = max_pole_magnitude(d.realization);
    double dt = cmd.dt;
    if (dt <= 0.0) {
        dt = 0.02 / max_pole;
        if (cmd.fin_hz > 0.0)
            dt = std::min(dt, 1.0 / (50.0 * cmd.fin_hz));
    }
    double duration = cmd.duration;
    if (duration <= 0.0) {
        if (cmd.fin_hz <= 0.0)
            throw std::invalid_argument(
                "--duration is required when --fin-hz is 0");
        duration = 20.0 / cmd.fin_hz;
    }
    const auto trace =
        response::simulate_square_wave(d.tf, cmd.fin_hz, cmd.amp, duration,
                                       dt);
    write_output(emit::transient_csv(trace), cmd.output);
}

/// Synthesizes, optionally rounds to a series, and appends the realization
/// error (measured over two decades around the characteristic frequency)
/// to the report notes.
DesignReport synth_report(const SynthCmd& cmd) {
    const Design d = make_design(cmd.spec);
    const auto exact =
        sallen_key::synth_cascade(d.tf, cmd.r_ohms, cmd.c_first);
    const auto series = parse_series(cmd.series);
    const auto cascade = sallen_key::round_to_series(exact, series);

    const auto grid = response::log_grid(d.realization.char_freq / 100.0,
                                         d.realization.char_freq * 100.0,
                                         500);
    const auto err =
        sallen_key::realization_error(d.tf, cascade.realized_tf, grid);

    DesignReport report = build_report(d.spec, d.realization, d.tf);
    report.components = cascade;
    report.notes.push_back("component series: " + cmd.series);
    report.notes.push_back("realization error: max " + sig9(err.max_db) +
                           " dB, rms " + sig9(err.rms_db) + " dB");
    for (std::size_t i = 0; i < err.pole_displacement_rel.size(); ++i)
        report.notes.push_back(
            "stage " + std::to_string(i + 1) + " pole displacement: " +
            sig9(err.pole_displacement_rel[i]) + " relative");
    return report;
}

void run_synth(const SynthCmd& cmd) {
    const DesignReport report = synth_report(cmd);
    write_output(cmd.as_json ? report_to_json(report)
                             : report_to_text(report),
                 cmd.output);
}

void run_netlist(const NetlistCmd& cmd) {
    const DesignReport report = synth_report(cmd.synth);
    emit::Analysis analysis;
    if (cmd.analysis == "ac") {
        analysis = emit::AcAnalysis{cmd.f_lo_hz, cmd.f_hi_hz, 100};
    } else {
        double duration = cmd.duration;
        if (duration <= 0.0) {
            if (cmd.fin_hz <= 0.0)
                throw std::invalid_argument(
                    "--duration is required when --fin-hz is 0");
            duration = 20.0 / cmd.fin_hz;
        }
        analysis = emit::TranAnalysis{cmd.fin_hz, cmd.amp, duration};
    }
    write_output(emit::netlist(*report.components, analysis),
                 cmd.synth.output);
}

void run_compare(const CompareCmd& cmd) {
    const double scale = cmd.spec.freq_scale();
    const FilterSpecification spec =
        validate_spec(cmd.spec.ap, cmd.spec.wp * scale, cmd.spec.as,
                      cmd.spec.ws * scale);

    const auto butter = butterworth::design(spec);
    const auto cheb = cheby1::design(spec);
    const auto btf = stages_from_poles(butter);
    const auto ctf = stages_from_poles(cheb);

    const double grid_lo =
        cmd.grid_lo > 0.0 ? cmd.grid_lo * scale : spec.omega_p / 10.0;
    const double grid_hi =
        cmd.grid_hi > 0.0 ? cmd.grid_hi * scale : spec.omega_s * 10.0;
    const double band_lo =
        cmd.band_lo > 0.0 ? cmd.band_lo * scale : spec.omega_p;
    const double band_hi =
        cmd.band_hi > 0.0 ? cmd.band_hi * scale : 2.0 * spec.omega_p;

    const auto grid = response::log_grid(grid_lo, grid_hi, cmd.points);
    const auto bresp = response::sample_response(btf, grid);
    const auto cresp = response::sample_response(ctf, grid);
    const auto cmp = response::compare(bresp, cresp, band_lo, band_hi);

    std::string out;
    out += "butterworth: order " + std::to_string(butter.order) +
           ", slope " + sig9(cmp.slope_a_db_per_octave) +
           " dB/octave over [" + sig9(band_lo) + ", " + sig9(band_hi) +
           "] rad/s\n";
    out += "cheby1: order " + std::to_string(cheb.order) + ", slope " +
           sig9(cmp.slope_b_db_per_octave) + " dB/octave over [" +
           sig9(band_lo) + ", " + sig9(band_hi) + "] rad/s\n";
    if (cheb.order < butter.order)
        out += "smaller order: cheby1 (" + std::to_string(cheb.order) +
               " vs " + std::to_string(butter.order) + ")\n";
    else if (butter.order < cheb.order)
        out += "smaller order: butterworth (" +
               std::to_string(butter.order) + " vs " +
               std::to_string(cheb.order) + ")\n";
    else
        out += "orders equal (" + std::to_string(butter.order) + ")\n";
    out += "steeper roll-off in band: ";
    out += cmp.slope_b_db_per_octave < cmp.slope_a_db_per_octave
               ? "cheby1"
               : "butterworth";
    out += "\n";
    if (cmp.crossover)
        out += "highest crossover: " + sig9(*cmp.crossover) + " rad/s\n";
    else
        out += "highest crossover: none within grid\n";
    std::cout << out;

    if (!cmd.csv.empty()) {
        std::string csv = "omega_rad_s,butterworth_db,cheby1_db,diff_db\n";
        for (std::size_t i = 0; i < grid.points.size(); ++i)
            csv += sig9(grid.points[i]) + "," + sig9(bresp.magnitude_db[i]) +
                   "," + sig9(cresp.magnitude_db[i]) + "," +
                   sig9(cmp.diff_db[i]) + "\n";
        write_output(csv, cmd.csv);
    }
    if (!cmd.svg.empty()) {
        const response::FrequencyResponse resps[] = {bresp, cresp};
        const std::string labels[] = {"butterworth", "cheby1"};
        write_output(emit::bode_svg({resps, 2}, {labels, 2}), cmd.svg);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"analog Butterworth / Chebyshev-I low-pass filter designer"};
    app.require_subcommand(1);

    DesignCmd design_cmd;
    auto* design = app.add_subcommand(
        "design", "design a filter and print the full report");
    add_spec_flags(design, design_cmd.spec, true);
    auto* jopt = design->add_flag("--json", design_cmd.as_json,
                                  "emit the report as JSON");
    design->add_flag("--text", design_cmd.as_text,
                     "emit the report as plain text (default)")
        ->excludes(jopt);
    design->add_option("-o,--output", design_cmd.output,
                       "write to a file instead of stdout");
    design->callback([&] { run_design(design_cmd); });

    RespondCmd respond_cmd;
    auto* respond = app.add_subcommand(
        "respond", "sample the frequency response to CSV (and SVG)");
    add_spec_flags(respond, respond_cmd.spec, true);
    respond->add_option("--grid-lo", respond_cmd.grid_lo,
                        "grid start (rad/s; Hz with --hz)")
        ->required();
    respond->add_option("--grid-hi", respond_cmd.grid_hi,
                        "grid end (rad/s; Hz with --hz)")
        ->required();
    respond->add_option("--points", respond_cmd.points,
                        "number of log-spaced grid points")
        ->check(CLI::Range(2, 10'000'000));
    respond->add_flag("--normalize", respond_cmd.normalize,
                      "shift magnitudes so the peak sits at 0 dB");
    respond->add_option("-o,--output", respond_cmd.output,
                        "CSV file instead of stdout");
    respond->add_option("--svg", respond_cmd.svg,
                        "also write a Bode magnitude SVG");
    respond->callback([&] { run_respond(respond_cmd); });

    SimulateCmd simulate_cmd;
    auto* simulate = app.add_subcommand(
        "simulate", "drive the design with a square wave, emit CSV");
    add_spec_flags(simulate, simulate_cmd.spec, true);
    simulate->add_option("--fin-hz", simulate_cmd.fin_hz,
                         "square-wave frequency in Hz (0 = DC step)")
        ->required()
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--amp", simulate_cmd.amp,
                         "square-wave amplitude, volts");
    simulate->add_option("--duration", simulate_cmd.duration,
                         "simulated time, seconds (default: 20 periods)");
    simulate->add_option("--dt", simulate_cmd.dt,
                         "integration step, seconds (default: resolution "
                         "guard limit)");
    simulate->add_option("-o,--output", simulate_cmd.output,
                         "CSV file instead of stdout");
    simulate->callback([&] { run_simulate(simulate_cmd); });

    SynthCmd synth_cmd;
    auto* synth = app.add_subcommand(
        "synth", "synthesize Sallen-Key component values");
    add_spec_flags(synth, synth_cmd.spec, true);
    synth->add_option("--r-ohms", synth_cmd.r_ohms,
                      "resistor choice for biquad stages")
        ->check(CLI::PositiveNumber);
    synth->add_option("--c-first", synth_cmd.c_first,
                      "capacitor choice for first-order stages, farads")
        ->check(CLI::PositiveNumber);
    synth->add_option("--series", synth_cmd.series,
                      "round components to a preferred-value series")
        ->check(CLI::IsMember({"e24", "e96", "none"}));
    synth->add_flag("--json", synth_cmd.as_json,
                    "emit the report as JSON");
    synth->add_option("-o,--output", synth_cmd.output,
                      "write to a file instead of stdout");
    synth->callback([&] { run_synth(synth_cmd); });

    NetlistCmd netlist_cmd;
    auto* netlist = app.add_subcommand(
        "netlist", "emit a SPICE netlist for the synthesized cascade");
    add_spec_flags(netlist, netlist_cmd.synth.spec, true);
    netlist->add_option("--r-ohms", netlist_cmd.synth.r_ohms,
                        "resistor choice for biquad stages")
        ->check(CLI::PositiveNumber);
    netlist->add_option("--c-first", netlist_cmd.synth.c_first,
                        "capacitor choice for first-order stages, farads")
        ->check(CLI::PositiveNumber);
    netlist->add_option("--series", netlist_cmd.synth.series,
                        "round components to a preferred-value series")
        ->check(CLI::IsMember({"e24", "e96", "none"}));
    netlist->add_option("--analysis", netlist_cmd.analysis,
                        "analysis card: ac sweep or square-wave tran")
        ->check(CLI::IsMember({"ac", "tran"}));
    netlist->add_option("--f-lo-hz", netlist_cmd.f_lo_hz,
                        "ac sweep start, Hz");
    netlist->add_option("--f-hi-hz", netlist_cmd.f_hi_hz,
                        "ac sweep end, Hz");
    netlist->add_option("--fin-hz", netlist_cmd.fin_hz,
                        "tran square-wave frequency, Hz (0 = DC step)")
        ->check(CLI::NonNegativeNumber);
    netlist->add_option("--amp", netlist_cmd.amp,
                        "tran square-wave amplitude, volts");
    netlist->add_option("--duration", netlist_cmd.duration,
                        "tran simulated time, seconds (default: 20 "
                        "periods)");
    netlist->add_option("-o,--output", netlist_cmd.synth.output,
                        "netlist file instead of stdout");
    netlist->callback([&] { run_netlist(netlist_cmd); });

    CompareCmd compare_cmd;
    auto* compare = app.add_subcommand(
        "compare", "design both families for one spec and compare them");
    add_spec_flags(compare, compare_cmd.spec, false);
    compare->add_option("--grid-lo", compare_cmd.grid_lo,
                        "grid start (default: wp/10)");
    compare->add_option("--grid-hi", compare_cmd.grid_hi,
                        "grid end (default: ws*10)");
    compare->add_option("--points", compare_cmd.points,
                        "number of log-spaced grid points")
        ->check(CLI::Range(2, 10'000'000));
    compare->add_option("--band-lo", compare_cmd.band_lo,
                        "slope band start (default: wp)");
    compare->add_option("--band-hi", compare_cmd.band_hi,
                        "slope band end (default: 2*wp)");
    compare->add_option("--csv", compare_cmd.csv,
                        "write the per-point comparison CSV here");
    compare->add_option("--svg", compare_cmd.svg,
                        "write the overlay Bode SVG here");
    compare->callback([&] { run_compare(compare_cmd); });

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::FileError& e) {
        app.exit(e);
        return 3;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
