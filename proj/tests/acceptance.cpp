// Acceptance gate: ten go/no-go checks for the filter-design pipeline,
// one printed line each. Exit status is the number of failed checks.
//
// Reference values come from independently computed design vectors for
// the two benchmark specs (0.5 dB @ 100 rad/s, 20 dB @ 200 rad/s) and
// from closed-form magnitude evaluation; tolerances are pinned per check.

#include <anafilt/butterworth.hpp>
#include <anafilt/chebyshev.hpp>
#include <anafilt/model.hpp>
#include <anafilt/response.hpp>
#include <anafilt/sallen_key.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

using namespace anafilt;
namespace rs = anafilt::response;
namespace sk = anafilt::sallen_key;

namespace {

int failures = 0;

void report(int index, bool ok, const std::string& label,
            const std::string& detail = "") {
    std::printf("%s: %2d. %s%s%s\n", ok ? "PASS" : "FAIL", index,
                label.c_str(), detail.empty() ? "" : " -- ",
                detail.c_str());
    if (!ok) ++failures;
}

void criterion(int index, const std::string& label,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(index, ok, label, detail);
}

bool close_rel(double got, double want, double rel) {
    return std::abs(got - want) <= rel * std::abs(want);
}

bool close_abs(double got, double want, double abs_tol) {
    return std::abs(got - want) <= abs_tol;
}

} // namespace

int main() {
    const FilterSpecification spec = validate_spec(0.5, 100.0, 20.0, 200.0);

    const FilterRealization butter = butterworth::design(spec);
    const TransferFunction btf = stages_from_poles(butter);
    const FilterRealization cheb = cheby1::design(spec);
    const TransferFunction ctf = stages_from_poles(cheb);

    // 1. Butterworth order and cutoff.
    criterion(1, "butterworth order 5, cutoff 123.4120164 (1e-3)",
              [&](std::string& detail) {
        detail = "n=" + std::to_string(butter.order) +
                 " wc=" + std::to_string(butter.char_freq);
        return butter.order == 5 &&
               close_abs(butter.char_freq, 123.4120164, 1e-3);
    });

    // 2. Butterworth pole locations, 1e-3 absolute per component.
    criterion(2, "butterworth poles at reference locations (1e-3 abs)",
              [&](std::string& detail) {
        const std::vector<Complex> want = {
            {-38.1364, 117.3718},
            {-99.8424, 72.5398},
            {-123.4120, 0.0},
            {-99.8424, -72.5398},
            {-38.1364, -117.3718},
        };
        if (butter.poles.size() != want.size()) {
            detail = "pole count " + std::to_string(butter.poles.size());
            return false;
        }
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (!close_abs(butter.poles[i].real(), want[i].real(), 1e-3) ||
                !close_abs(butter.poles[i].imag(), want[i].imag(), 1e-3)) {
                detail = "pole " + std::to_string(i) + " off reference";
                return false;
            }
        }
        return true;
    });

    // 3. Chebyshev order, hyperbolic factors, poles.
    criterion(3, "chebyshev order 4; k/tanh/cosh and poles at references",
              [&](std::string& detail) {
        if (cheb.order != 4) {
            detail = "n=" + std::to_string(cheb.order);
            return false;
        }
        const cheby1::Transform t = cheby1::transform(4, *cheb.epsilon);
        // k is quoted to two decimals (0.44), so compare absolutely;
        // tanh k and cosh k carry three figures -> 0.5% relative
        if (!close_abs(t.k, 0.44, 0.005) ||
            !close_rel(t.tanh_k, 0.417, 0.005) ||
            !close_rel(t.cosh_k, 1.1, 0.005)) {
            detail = "hyperbolic factors off reference";
            return false;
        }
        const std::vector<Complex> want = {
            {-17.567, 101.64},
            {-42.383, 42.13},
            {-42.383, -42.13},
            {-17.567, -101.64},
        };
        if (cheb.poles.size() != want.size()) {
            detail = "pole count " + std::to_string(cheb.poles.size());
            return false;
        }
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (!close_rel(cheb.poles[i].real(), want[i].real(), 0.005) ||
                !close_rel(cheb.poles[i].imag(), want[i].imag(), 0.005)) {
                detail = "pole " + std::to_string(i) + " off reference";
                return false;
            }
        }
        return true;
    });

    // 4. Chebyshev transfer-function constant (product of stage b terms).
    criterion(4, "chebyshev constant P = 37995628.25 (0.5%)",
              [&](std::string& detail) {
        double p = 1.0;
        for (const CascadeStage& s : ctf.stages)
            p *= std::get<SecondOrder>(s).b;
        detail = "P=" + std::to_string(p);
        return close_rel(p, 37995628.25, 0.005);
    });

    // 5. First-order component golden vector.
    criterion(5, "first-order RC: wc=123.412, C=0.1uF -> R=81.03k (0.05%)",
              [&](std::string& detail) {
        const sk::FirstOrderRC rc = sk::synth_first_order(123.412, 100e-9);
        detail = "R=" + std::to_string(rc.r_ohms);
        return close_rel(rc.r_ohms, 81.03e3, 0.0005);
    });

    // 6. Cascade magnitude vs closed-form oracles, 1e-6 relative over
    // 1000 log-spaced points (Chebyshev compared shape-normalized).
    criterion(6, "cascade equals closed-form oracles (1e-6 rel, 1000 pts)",
              [&](std::string& detail) {
        const double wc = butter.char_freq;
        const rs::FrequencyGrid bgrid =
            rs::log_grid(wc / 100.0, 100.0 * wc, 1000);
        const rs::FrequencyResponse bresp = rs::sample_response(btf, bgrid);
        for (std::size_t i = 0; i < bgrid.points.size(); ++i) {
            const double lin =
                std::pow(10.0, bresp.magnitude_db[i] / 20.0);
            const double want =
                rs::closed_form_butterworth(5, wc, bgrid.points[i]);
            if (!close_rel(lin, want, 1e-6)) {
                detail = "butterworth point " + std::to_string(i);
                return false;
            }
        }
        const double eps = *cheb.epsilon;
        const double dc = rs::closed_form_chebyshev(4, eps, 100.0, 0.0);
        const rs::FrequencyGrid cgrid = rs::log_grid(1.0, 1000.0, 1000);
        const rs::FrequencyResponse cresp = rs::sample_response(ctf, cgrid);
        for (std::size_t i = 0; i < cgrid.points.size(); ++i) {
            const double lin =
                std::pow(10.0, cresp.magnitude_db[i] / 20.0) * dc;
            const double want =
                rs::closed_form_chebyshev(4, eps, 100.0, cgrid.points[i]);
            if (!close_rel(lin, want, 1e-6)) {
                detail = "chebyshev point " + std::to_string(i);
                return false;
            }
        }
        return true;
    });

    // 7. Corner guarantees for both designs.
    criterion(7, "designed responses meet both attenuation corners",
              [&](std::string& detail) {
        const double b_pass = magnitude_db(btf, 100.0);
        const double b_stop = magnitude_db(btf, 200.0);
        if (!close_abs(b_pass, -0.5, 1e-6)) {
            detail = "butterworth passband " + std::to_string(b_pass);
            return false;
        }
        if (b_stop > -20.0 + 1e-6) {
            detail = "butterworth stopband " + std::to_string(b_stop);
            return false;
        }
        // the Chebyshev cascade is unity at DC, so corners are judged
        // relative to the passband peak (a zero of C4)
        const double peak =
            magnitude_db(ctf, 100.0 * std::cos(M_PI / 8.0));
        const double c_pass = magnitude_db(ctf, 100.0) - peak;
        const double c_stop = magnitude_db(ctf, 200.0) - peak;
        if (!close_abs(c_pass, -0.5, 1e-6)) {
            detail = "chebyshev passband " + std::to_string(c_pass);
            return false;
        }
        if (c_stop > -20.0 + 1e-6) {
            detail = "chebyshev stopband " + std::to_string(c_stop);
            return false;
        }
        return true;
    });

    // 8. Roll-off: Chebyshev steeper in the transition band; Butterworth
    // asymptote -100 dB/decade +- 2 over [10wc, 100wc].
    criterion(8, "chebyshev rolls off steeper; butterworth -100 dB/decade",
              [&](std::string& detail) {
        const rs::FrequencyGrid grid = rs::log_grid(10.0, 2000.0, 2000);
        const rs::FrequencyResponse bresp = rs::sample_response(btf, grid);
        const rs::FrequencyResponse cresp = rs::sample_response(ctf, grid);
        const rs::Comparison cmp =
            rs::compare(bresp, cresp, 100.0, 200.0);
        if (!(cmp.slope_b_db_per_octave < cmp.slope_a_db_per_octave)) {
            detail = "slopes " + std::to_string(cmp.slope_a_db_per_octave) +
                     " vs " + std::to_string(cmp.slope_b_db_per_octave);
            return false;
        }
        const double wc = butter.char_freq;
        const double slope_per_decade =
            magnitude_db(btf, 100.0 * wc) - magnitude_db(btf, 10.0 * wc);
        detail = "asymptote " + std::to_string(slope_per_decade) +
                 " dB/decade";
        return close_abs(slope_per_decade, -100.0, 2.0);
    });

    // 9. Transient spectral consistency: square wave at 15.91 Hz through
    // the Butterworth cascade; fundamental and third harmonic of the
    // settled output match the frequency response within 2%.
    criterion(9, "square-wave harmonics match |H| (2%, < 10 s)",
              [&](std::string& detail) {
        const auto t0 = std::chrono::steady_clock::now();

        const double f = 15.91;
        const double period = 1.0 / f;
        const int per_period = 2048;
        const double dt = period / per_period;
        const rs::TransientTrace trace =
            rs::simulate_square_wave(btf, f, 1.0, 20.0 * period, dt);

        // analyze the last 4 whole periods: settled and leakage-free
        const int window = 4 * per_period;
        const int last =
            static_cast<int>(trace.samples_out.size()) - 1; // t = 20T
        const int begin = last - window;
        const auto harmonic_amp = [&](int h) {
            std::complex<double> acc{0.0, 0.0};
            for (int k = 0; k < window; ++k) {
                const double angle =
                    -2.0 * M_PI * h * static_cast<double>(k) /
                    static_cast<double>(per_period);
                acc += trace.samples_out[static_cast<std::size_t>(
                           begin + k)] *
                       std::polar(1.0, angle);
            }
            return 2.0 * std::abs(acc) / static_cast<double>(window);
        };
        const double amp1 = harmonic_amp(1);
        const double amp3 = harmonic_amp(3);

        // 4/pi * |H(j w1)| and 4/(3 pi) * |H(j 3 w1)| at w1 = 2 pi f
        const double want1 = 1.2022409844024664;
        const double want3 = 0.005008288640778523;

        const auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
        detail = "fundamental " + std::to_string(amp1) + " (want " +
                 std::to_string(want1) + "), third " +
                 std::to_string(amp3) + " (want " + std::to_string(want3) +
                 "), " + std::to_string(elapsed) + " ms";
        return close_rel(amp1, want1, 0.02) &&
               close_rel(amp3, want3, 0.02) && elapsed < 10000;
    });

    // 10. Synthesis round trip and R-scaling invariance for both designs.
    criterion(10, "synthesis round trip 1e-9; R-scaling invariant 1e-12",
              [&](std::string& detail) {
        const rs::FrequencyGrid grid = rs::log_grid(1.0, 10000.0, 500);
        for (const TransferFunction* tf : {&btf, &ctf}) {
            const sk::SallenKeyCascade at_r =
                sk::synth_cascade(*tf, 10e3, 100e-9);
            const sk::RealizationError round_trip =
                sk::realization_error(*tf, at_r.realized_tf, grid);
            for (double d : round_trip.pole_displacement_rel)
                if (d > 1e-9) {
                    detail = "round-trip displacement " + std::to_string(d);
                    return false;
                }
            const sk::SallenKeyCascade at_2r =
                sk::synth_cascade(*tf, 20e3, 100e-9);
            const sk::RealizationError scaled = sk::realization_error(
                at_r.realized_tf, at_2r.realized_tf, grid);
            for (double d : scaled.pole_displacement_rel)
                if (d > 1e-12) {
                    detail = "R-scaling displacement " + std::to_string(d);
                    return false;
                }
        }
        return true;
    });

    if (failures == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
