#include "contactlab/flows.hpp"

#include "contactlab/constructions.hpp"
#include "test_helpers.hpp"

#include <doctest.h>
#include <random>

using namespace contactlab;
using namespace contactlab::testing;

namespace {

Box unit_box() {
    Box b;
    b.lo = vec3(-1, -1, -1);
    b.hi = vec3(1, 1, 1);
    return b;
}

} // namespace

TEST_CASE("contact vector field formulas") {
    const auto reeb = ContactHamiltonian::from_name_or_expression("reeb");
    const auto coord_x = ContactHamiltonian::from_name_or_expression("coordinate-x");
    const auto radial = ContactHamiltonian::from_name_or_expression("radial");

    CHECK((contact_vector_field(reeb, vec3(3, -2, 7)) - vec3(0, 0, 1)).norm() <= 1e-15);
    CHECK((contact_vector_field(coord_x, vec3(2, 5, 0)) - vec3(0, 1, 2)).norm() <= 1e-12);
    for (double t : linspace(0.0, 2.0 * M_PI, 17)) {
        const Vec p = vec3(std::cos(t), std::sin(t), 0.0);
        CHECK((contact_vector_field(radial, p) - p).norm() <= 1e-12);
    }
}

TEST_CASE("defining relations hold for registered fields") {
    const ContactModel model(1);
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<ContactHamiltonian> fields;
    for (const auto& [name, expr] : ContactHamiltonian::registry())
        fields.push_back(ContactHamiltonian::from_name_or_expression(name));
    fields.push_back(ContactHamiltonian::from_expression("sin(x)*y + z^2"));

    for (const auto& h : fields) {
        for (int trial = 0; trial < 10000; ++trial) {
            const Vec p = vec3(u(rng), u(rng), u(rng));
            const Vec X = contact_vector_field(h, p);
            // alpha(X_H) = H
            CHECK(std::abs(model.alpha(p, X) - h.value(p)) <= 1e-10);
            // d alpha(X_H, v) = -dH(v) on the frame
            const Vec g = h.spatial_gradient(p);
            const auto xi = model.project(p, X).xi_frame;
            Vec ex(2), ey(2);
            ex << 1, 0;
            ey << 0, 1;
            const double dh_ex = g[0] + p[1] * g[2]; // dH(e_x) with e_x = dx + y dz
            const double dh_ey = g[1];
            CHECK(std::abs(model.d_alpha_frame(xi, ex) + dh_ex) <= 1e-8);
            CHECK(std::abs(model.d_alpha_frame(xi, ey) + dh_ey) <= 1e-8);
        }
    }
}

TEST_CASE("derivative validation rejects inconsistent fields") {
    auto broken = [](const Vec& p, double) { return p[0] * p[0]; };
    // function-backed fields fall back to finite differences, so they always
    // validate; expression fields validate their symbolic gradients
    CHECK_NOTHROW(ContactHamiltonian::from_function(broken, false));
    CHECK_NOTHROW(ContactHamiltonian::from_expression("x^2"));
}

TEST_CASE("Reeb flow is a z translation") {
    const auto reeb = ContactHamiltonian::from_name_or_expression("reeb");
    FlowStats stats;
    const auto res = flow_point(reeb, vec3(0.3, -1.2, 0.5), 0.7, {}, &stats);
    CHECK((res.point - vec3(0.3, -1.2, 1.2)).norm() <= 1e-10);
    CHECK(res.conformal_residual <= 1e-10);
    CHECK(std::abs(res.conformal_factor_log) <= 1e-10);
    CHECK(stats.steps == 7000);
}

TEST_CASE("radial field has a closed-form flow") {
    const auto radial = ContactHamiltonian::from_name_or_expression("radial");
    SUBCASE("point image") {
        const auto res = flow_point(radial, vec3(1, 0, 0), 0.5);
        CHECK((res.point - vec3(std::exp(0.5), 0.0, 0.0)).norm() <= 1e-8);
    }
    SUBCASE("general point and conformal factor e^{2t}") {
        const Vec p = vec3(0.4, -0.7, 0.3);
        const double t = 0.8;
        const auto res = flow_point(radial, p, t);
        const Vec expected =
            vec3(std::exp(t) * p[0], std::exp(t) * p[1], std::exp(2.0 * t) * p[2]);
        CHECK((res.point - expected).norm() <= 1e-8);
        CHECK(res.conformal_residual <= 1e-6);
        CHECK(res.conformal_factor_log == doctest::Approx(2.0 * t).epsilon(1e-6));
    }
    SUBCASE("integrator order is four") {
        const Vec p = vec3(1.0, 0.5, 0.25);
        const double t = 0.5;
        const Vec exact = vec3(std::exp(t) * p[0], std::exp(t) * p[1], std::exp(2.0 * t) * p[2]);
        std::vector<double> errors;
        for (int steps : {16, 32, 64}) {
            FlowOptions opts;
            opts.steps_per_unit = steps / t;
            opts.monitor_stride = 0; // coarse steps: order measurement only
            opts.variational = false;
            errors.push_back((flow_point(radial, p, t, opts).point - exact).norm());
        }
        for (size_t i = 0; i + 1 < errors.size(); ++i) {
            const double order = std::log2(errors[i] / errors[i + 1]);
            CHECK(order >= 3.8);
            CHECK(order <= 4.5);
        }
    }
    SUBCASE("step monitor flags reckless steps") {
        FlowOptions opts;
        opts.steps_per_unit = 2;
        opts.monitor_stride = 1;
        opts.variational = false;
        CHECK_THROWS_AS(flow_point(radial, vec3(1, 1, 1), 1.0, opts), integration_error);
    }
}

TEST_CASE("flow contactness for several generators") {
    const std::vector<std::string> names = {"reeb", "radial", "coordinate-x", "sin(x)*y + z^2"};
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& name : names) {
        const auto h = ContactHamiltonian::from_name_or_expression(name);
        for (double t : {-1.0, 0.3, 1.0}) {
            const auto res = flow_point(h, vec3(u(rng), u(rng), u(rng)), t);
            CHECK(res.conformal_residual <= 1e-6);
        }
    }
}

TEST_CASE("flowing a curve maps every sample") {
    const auto radial = ContactHamiltonian::from_name_or_expression("radial");
    FlowOptions opts;
    opts.steps_per_unit = 2000;
    const auto res = flow_curve(radial, space_circle(), 0.5, opts, 128);
    CHECK(res.mapped.closed());
    CHECK(res.residuals.size() == res.factors_log.size());
    CHECK(res.residuals.size() >= 128);
    for (double r : res.residuals) CHECK(r <= 1e-6);
    for (double g : res.factors_log) CHECK(g == doctest::Approx(1.0).epsilon(1e-6));
    // node images land on the circle of radius e^{0.5}
    for (double t : res.mapped.sample_params())
        CHECK(res.mapped.position(t).head(2).norm() == doctest::Approx(std::exp(0.5)).epsilon(1e-6));
}

TEST_CASE("tangency margin") {
    const auto radial = ContactHamiltonian::from_name_or_expression("radial");
    const auto coord_x = ContactHamiltonian::from_name_or_expression("coordinate-x");

    SUBCASE("radial field vs the unit circle: margin one") {
        CHECK(tangency_margin(radial, space_circle()) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("coordinate field grazes the circle") {
        CHECK(tangency_margin(coord_x, space_circle(), 16384) <= 1e-3);
    }
    SUBCASE("the Reeb direction is always in the span") {
        const auto reeb = ContactHamiltonian::from_name_or_expression("reeb");
        CHECK(tangency_margin(reeb, space_circle()) <= 1e-12);
    }
    SUBCASE("Reeb-tangent curves are degenerate") {
        CHECK_THROWS_AS(tangency_margin(radial, interval_curve()), degenerate_input_error);
    }
    SUBCASE("critical-point rigidity on closed Legendrians") {
        const std::vector<std::string> names = {"coordinate-x", "radial", "x^2 + y^2 - z"};
        for (int k = 0; k < 4; ++k) {
            const auto base = zero_action_eight(1.0 + 0.1 * k, 0.05 * k);
            if (!base.immersed()) continue;
            const auto leg = legendrian_lift(base, 0.0);
            CHECK(leg.curve().closed());
            for (const auto& name : names) {
                const auto h = ContactHamiltonian::from_name_or_expression(name);
                CHECK(tangency_margin(h, leg.curve(), 16384) < 1e-3);
            }
        }
    }
}

TEST_CASE("displacement experiment") {
    const auto radial = ContactHamiltonian::from_name_or_expression("radial");
    FlowOptions opts;
    opts.steps_per_unit = 2000;

    SUBCASE("radial flow displaces the circle without chords") {
        const auto res = displacement_experiment(radial, space_circle(), {0.1, 0.2, 0.3, 0.4, 0.5},
                                                 opts, {}, 256);
        CHECK(res.margin == doctest::Approx(1.0).epsilon(1e-9));
        for (const auto& row : res.rows) {
            CHECK_FALSE(row.degenerate);
            CHECK(row.chord_count == 0);
            CHECK(row.disjoint);
        }
        REQUIRE(res.first_disjoint_time.has_value());
        CHECK(*res.first_disjoint_time == doctest::Approx(0.1));
    }
    SUBCASE("energy upper bound from a declared box") {
        Box box;
        box.lo = vec3(-2, -2, -2);
        box.hi = vec3(2, 2, 2);
        const auto res = displacement_experiment(radial, space_circle(), {0.2, 0.1}, opts, box, 256);
        REQUIRE(res.energy_upper_bound.has_value());
        // osc over [-2,2]^3 is 16; best disjoint time 0.1
        CHECK(*res.energy_upper_bound == doctest::Approx(1.6).epsilon(1e-6));
    }
    SUBCASE("pure Reeb translation is degenerate: identical traces") {
        const auto reeb = ContactHamiltonian::from_name_or_expression("reeb");
        const auto res = displacement_experiment(reeb, space_circle(), {0.0, 0.3}, opts, {}, 256);
        for (const auto& row : res.rows) CHECK(row.degenerate);
        CHECK_FALSE(res.first_disjoint_time.has_value());
    }
    SUBCASE("csv output") {
        const auto res = displacement_experiment(radial, space_circle(), {0.1}, opts, {}, 128);
        const auto csv = displacement_csv(res);
        CHECK(csv.substr(0, csv.find('\n')) ==
              "time,chord_count,min_len,total_len,planar_hits,margin,degenerate,disjoint");
        CHECK(displacement_csv(res) == csv);
    }
}

TEST_CASE("hofer oscillation norms") {
    const auto radial = ContactHamiltonian::from_name_or_expression("radial");
    SUBCASE("radial on the unit box") {
        const auto report = hofer_osc_norm(radial, unit_box(), 64);
        CHECK(report.osc_norm == doctest::Approx(6.0).epsilon(0.05 / 6.0));
        CHECK(report.positive_norm == doctest::Approx(3.0).epsilon(0.02 / 3.0));
        CHECK(report.min_integral == doctest::Approx(-3.0).epsilon(0.01));
        CHECK(report.time_samples == 1);
    }
    SUBCASE("constants have zero oscillation") {
        const auto c = ContactHamiltonian::from_expression("4.5");
        const auto report = hofer_osc_norm(c, unit_box(), 16);
        CHECK(report.osc_norm == doctest::Approx(0.0));
        CHECK(report.positive_norm == doctest::Approx(4.5));
    }
    SUBCASE("time-dependent field integrates in time") {
        const auto sx = ContactHamiltonian::from_expression("s*x");
        const auto report = hofer_osc_norm(sx, unit_box(), 32);
        CHECK(report.time_samples >= 64);
        CHECK(report.osc_norm == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(report.positive_norm == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("nested grids refine monotonically") {
        const auto h = ContactHamiltonian::from_expression("sin(3*x)*cos(2*y) + z^2");
        double prev = -1.0;
        for (int res : {32, 64, 128}) {
            const auto report = hofer_osc_norm(h, unit_box(), res);
            CHECK(report.osc_norm >= prev);
            prev = report.osc_norm;
        }
    }
    SUBCASE("bad boxes are rejected") {
        Box empty;
        empty.lo = vec3(0, 0, 0);
        empty.hi = vec3(1, 0, 1);
        CHECK_THROWS_AS(hofer_osc_norm(radial, empty, 16), contract_error);
    }
}
