#include <catch2/catch_amalgamated.hpp>

#include <anafilt/butterworth.hpp>
#include <anafilt/model.hpp>
#include <anafilt/sallen_key.hpp>

#include <cmath>

using namespace anafilt;
using Catch::Approx;

namespace sk = anafilt::sallen_key;
namespace rs = anafilt::response;

namespace {

TransferFunction reference_butterworth() {
    return stages_from_poles(
        butterworth::design(validate_spec(0.5, 100.0, 20.0, 200.0)));
}

} // namespace

TEST_CASE("first-order RC synthesis", "[sallen_key][synth]") {
    SECTION("reference value: w0 = 123.412..., C = 0.1 uF") {
        const sk::FirstOrderRC rc =
            sk::synth_first_order(123.41201636492526, 100e-9);
        CHECK(rc.c_farads == 100e-9);
        CHECK(rc.r_ohms == Approx(81029.38672057938).epsilon(1e-12));
    }
    SECTION("R*C = 1/w0 identity") {
        const sk::FirstOrderRC rc = sk::synth_first_order(250.0, 47e-9);
        CHECK(rc.r_ohms * rc.c_farads == Approx(1.0 / 250.0).epsilon(1e-12));
    }
    SECTION("validation") {
        CHECK_THROWS_AS(sk::synth_first_order(0.0, 1e-7),
                        std::invalid_argument);
        CHECK_THROWS_AS(sk::synth_first_order(-5.0, 1e-7),
                        std::invalid_argument);
        CHECK_THROWS_AS(sk::synth_first_order(100.0, 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("second-order equal-R Sallen-Key synthesis", "[sallen_key][synth]") {
    SECTION("high-Q Butterworth stage at R = 10k") {
        const sk::SecondOrderSK s = sk::synth_second_order(
            76.27282073368204, 15230.52578325658, 10e3);
        CHECK(s.r_ohms == 10e3);
        CHECK(s.c1_farads == Approx(2.6221660360291368e-06).epsilon(1e-12));
        CHECK(s.c2_farads == Approx(2.503945754043871e-07).epsilon(1e-12));
    }
    SECTION("high-Q Chebyshev stage at R = 10k") {
        const sk::SecondOrderSK s = sk::synth_second_order(
            35.070613915519985, 10635.186409657712, 10e3);
        CHECK(s.c1_farads == Approx(5.702780124744064e-06).epsilon(1e-12));
        CHECK(s.c2_farads == Approx(1.6488010912377e-07).epsilon(1e-9));
    }
    SECTION("C1/C2 = 4 Q^2 by construction") {
        for (const auto& [a, b] : {std::pair{76.3, 15230.0},
                                   std::pair{35.1, 10635.0},
                                   std::pair{200.0, 15230.0}}) {
            const sk::SecondOrderSK s = sk::synth_second_order(a, b, 10e3);
            const double q = std::sqrt(b) / a;
            CHECK(s.c1_farads / s.c2_farads ==
                  Approx(4.0 * q * q).epsilon(1e-12));
        }
    }
    SECTION("validation") {
        CHECK_THROWS_AS(sk::synth_second_order(0.0, 100.0, 1e4),
                        std::invalid_argument);
        CHECK_THROWS_AS(sk::synth_second_order(10.0, 0.0, 1e4),
                        std::invalid_argument);
        CHECK_THROWS_AS(sk::synth_second_order(10.0, 100.0, 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("whole-cascade synthesis round trip", "[sallen_key][cascade]") {
    const TransferFunction tf = reference_butterworth();
    const sk::SallenKeyCascade cascade = sk::synth_cascade(tf, 10e3, 100e-9);

    REQUIRE(cascade.stages.size() == 3);
    REQUIRE(cascade.realized_tf.stages.size() == 3);

    SECTION("stage variants mirror the source cascade") {
        CHECK(std::holds_alternative<sk::FirstOrderRC>(cascade.stages[0]));
        CHECK(std::holds_alternative<sk::SecondOrderSK>(cascade.stages[1]));
        CHECK(std::holds_alternative<sk::SecondOrderSK>(cascade.stages[2]));
        const auto& rc = std::get<sk::FirstOrderRC>(cascade.stages[0]);
        CHECK(rc.r_ohms == Approx(81029.38672057938).epsilon(1e-12));
        const auto& lo = std::get<sk::SecondOrderSK>(cascade.stages[1]);
        CHECK(lo.c1_farads == Approx(1.0015783016175487e-06).epsilon(1e-12));
        CHECK(lo.c2_farads == Approx(6.555415090072839e-07).epsilon(1e-12));
    }
    SECTION("realized coefficients reproduce the source within 1e-12") {
        for (std::size_t i = 0; i < tf.stages.size(); ++i) {
            if (const auto* fo = std::get_if<FirstOrder>(&tf.stages[i])) {
                const auto& rfo =
                    std::get<FirstOrder>(cascade.realized_tf.stages[i]);
                CHECK(rfo.w0 == Approx(fo->w0).epsilon(1e-12));
            } else {
                const auto& so = std::get<SecondOrder>(tf.stages[i]);
                const auto& rso =
                    std::get<SecondOrder>(cascade.realized_tf.stages[i]);
                CHECK(rso.a == Approx(so.a).epsilon(1e-12));
                CHECK(rso.b == Approx(so.b).epsilon(1e-12));
            }
        }
    }
    SECTION("empty cascade throws") {
        TransferFunction empty;
        CHECK_THROWS_AS(sk::synth_cascade(empty, 10e3, 100e-9),
                        EmptyCascade);
    }
}

TEST_CASE("preferred-value rounding", "[sallen_key][eseries]") {
    SECTION("E24 reference roundings") {
        CHECK(sk::round_component(2.6221660360291368e-06, sk::ESeries::E24) ==
              2.7e-6);
        CHECK(sk::round_component(81029.38672057938, sk::ESeries::E24) ==
              82000.0);
        CHECK(sk::round_component(1e-7, sk::ESeries::E24) == 1e-7);
    }
    SECTION("E96 reference rounding") {
        CHECK(sk::round_component(81029.38672057938, sk::ESeries::E96) ==
              80600.0);
    }
    SECTION("geometric rounding can promote to the next decade") {
        // 9.6 is nearer 10 than 9.1 on a log scale
        CHECK(sk::round_component(9.6, sk::ESeries::E24) == 10.0);
        CHECK(sk::round_component(9.5, sk::ESeries::E24) ==
              Approx(9.1).epsilon(1e-12));
    }
    SECTION("None leaves values untouched") {
        CHECK(sk::round_component(1234.567, sk::ESeries::None) == 1234.567);
    }
    SECTION("mantissa tables") {
        CHECK(sk::eseries_mantissas(sk::ESeries::E24).size() == 24);
        CHECK(sk::eseries_mantissas(sk::ESeries::E96).size() == 96);
        CHECK(sk::eseries_mantissas(sk::ESeries::None).empty());
    }
    SECTION("validation") {
        CHECK_THROWS_AS(sk::round_component(0.0, sk::ESeries::E24),
                        std::invalid_argument);
        CHECK_THROWS_AS(sk::round_component(-1.0, sk::ESeries::E24),
                        std::invalid_argument);
    }
}

TEST_CASE("rounding a cascade to a series", "[sallen_key][eseries]") {
    const TransferFunction tf = reference_butterworth();
    const sk::SallenKeyCascade exact = sk::synth_cascade(tf, 10e3, 100e-9);

    SECTION("None is the identity") {
        const sk::SallenKeyCascade same =
            sk::round_to_series(exact, sk::ESeries::None);
        REQUIRE(same.stages.size() == exact.stages.size());
        const auto& rc0 = std::get<sk::FirstOrderRC>(same.stages[0]);
        const auto& rc1 = std::get<sk::FirstOrderRC>(exact.stages[0]);
        CHECK(rc0.r_ohms == rc1.r_ohms);
        CHECK(rc0.c_farads == rc1.c_farads);
    }
    SECTION("E24 snaps every component to a preferred value") {
        const sk::SallenKeyCascade rounded =
            sk::round_to_series(exact, sk::ESeries::E24);
        const auto is_e24 = [](double v) {
            const double dec = std::pow(10.0, std::floor(std::log10(v)));
            const double m = v / dec;
            if (std::abs(m - 10.0) < 1e-9) return true; // decade promotion
            for (double c : sk::eseries_mantissas(sk::ESeries::E24))
                if (std::abs(m - c) < 1e-9) return true;
            return false;
        };
        for (const auto& stage : rounded.stages) {
            if (const auto* rc = std::get_if<sk::FirstOrderRC>(&stage)) {
                CHECK(is_e24(rc->r_ohms));
                CHECK(is_e24(rc->c_farads));
            } else {
                const auto& so = std::get<sk::SecondOrderSK>(stage);
                CHECK(is_e24(so.r_ohms));
                CHECK(is_e24(so.c1_farads));
                CHECK(is_e24(so.c2_farads));
            }
        }
        // the realized transfer function reflects the rounded parts
        const auto& hi = std::get<sk::SecondOrderSK>(rounded.stages[2]);
        CHECK(hi.c1_farads == Approx(2.7e-6).epsilon(1e-12));
        const auto& rhi = std::get<SecondOrder>(rounded.realized_tf.stages[2]);
        CHECK(rhi.a == Approx(2.0 / (10e3 * 2.7e-6)).epsilon(1e-12));
    }
}

TEST_CASE("realization error metrics", "[sallen_key][error]") {
    const TransferFunction tf = reference_butterworth();
    const sk::SallenKeyCascade exact = sk::synth_cascade(tf, 10e3, 100e-9);
    const rs::FrequencyGrid grid = rs::log_grid(1.0, 1000.0, 2000);

    SECTION("unrounded synthesis reproduces the design almost exactly") {
        const sk::RealizationError err =
            sk::realization_error(tf, exact.realized_tf, grid);
        CHECK(err.max_db <= 1e-8);
        CHECK(err.rms_db <= 1e-8);
        REQUIRE(err.pole_displacement_rel.size() == 3);
        for (double d : err.pole_displacement_rel)
            CHECK(d <= 1e-9);
    }
    SECTION("R choice drops out of the realized response") {
        const sk::SallenKeyCascade doubled =
            sk::synth_cascade(tf, 20e3, 100e-9);
        const sk::RealizationError err = sk::realization_error(
            exact.realized_tf, doubled.realized_tf, grid);
        for (double d : err.pole_displacement_rel)
            CHECK(d <= 1e-12);
        CHECK(err.max_db <= 1e-10);
    }
    SECTION("E24 rounding stays within the coarse-parts budget") {
        const sk::SallenKeyCascade rounded =
            sk::round_to_series(exact, sk::ESeries::E24);
        const sk::RealizationError err =
            sk::realization_error(tf, rounded.realized_tf, grid);
        CHECK(err.max_db == Approx(0.2939177874437888).margin(2e-3));
        CHECK(err.max_db < 1.5);
        CHECK(err.rms_db < err.max_db);
        CHECK(err.rms_db > 0.0);
    }
    SECTION("mismatched cascade structures throw") {
        TransferFunction shorter;
        shorter.stages = {tf.stages[0], tf.stages[1]};
        CHECK_THROWS_AS(sk::realization_error(tf, shorter, grid),
                        std::invalid_argument);
        TransferFunction swapped;
        swapped.stages = {tf.stages[1], tf.stages[0], tf.stages[2]};
        CHECK_THROWS_AS(sk::realization_error(tf, swapped, grid),
                        std::invalid_argument);
    }
    SECTION("empty grid throws") {
        rs::FrequencyGrid empty;
        CHECK_THROWS_AS(sk::realization_error(tf, exact.realized_tf, empty),
                        std::invalid_argument);
    }
}
