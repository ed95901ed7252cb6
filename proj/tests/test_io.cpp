#include "contactlab/curve_io.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace contactlab;
using namespace contactlab::testing;

TEST_CASE("curve json round trip") {
    std::vector<double> ts;
    std::vector<Vec> pts;
    for (int i = 0; i < 32; ++i) {
        const double t = i / 31.0;
        ts.push_back(t);
        pts.push_back(vec3(std::cos(t), std::sin(t), t));
    }
    auto c = SpaceCurve::sampled(1, ts, pts);
    Provenance prov;
    prov.construction = "spiral";
    prov.epsilon = 0.1;
    prov.turns = 57;
    c = c.with_provenance(prov);

    const std::string text = space_curve_to_json(c);
    const auto back = space_curve_from_json(text);
    CHECK(back.dim() == 3);
    CHECK(back.closed() == c.closed());
    CHECK(back.provenance().has_value());
    CHECK(back.provenance()->construction == "spiral");
    CHECK(back.provenance()->turns == 57);
    for (double t : ts) CHECK((back.position(t) - c.position(t)).norm() <= 1e-15);
}

TEST_CASE("reader validates the schema") {
    CHECK_THROWS_AS(space_curve_from_json("{"), contract_error);
    CHECK_THROWS_AS(space_curve_from_json("{\"n\": 1, \"closed\": false}"), contract_error);
    // too few samples
    CHECK_THROWS_AS(space_curve_from_json(
                        R"({"n": 1, "closed": false, "samples": [[0,0,0,0],[1,1,0,0]]})"),
                    contract_error);
    // non-increasing parameters
    std::string rows;
    for (int i = 0; i < 20; ++i) {
        rows += (i ? "," : "");
        rows += "[" + std::to_string(i == 7 ? 5 : i) + "," + std::to_string(i) + ",0,0]";
    }
    CHECK_THROWS_AS(
        space_curve_from_json(R"({"n": 1, "closed": false, "samples": [)" + rows + "]}"),
        contract_error);
    // bad row length
    rows.clear();
    for (int i = 0; i < 20; ++i) {
        rows += (i ? "," : "");
        rows += "[" + std::to_string(i) + ",0,0]";
    }
    CHECK_THROWS_AS(
        space_curve_from_json(R"({"n": 1, "closed": false, "samples": [)" + rows + "]}"),
        contract_error);
}

TEST_CASE("planar curves serialize with 2n columns") {
    const auto circle = unit_circle().resampled(64);
    const std::string text = planar_curve_to_json(circle);
    const auto back = planar_curve_from_json(text);
    CHECK(back.dim() == 2);
    CHECK(back.closed());
    CHECK((back.position(1.0) - circle.position(1.0)).norm() <= 1e-12);
}

TEST_CASE("analytic curves are sampled on export") {
    const auto d = diagonal_curve();
    const std::string text = space_curve_to_json(d, 128);
    const auto back = space_curve_from_json(text);
    CHECK(c0_distance(d, back) <= 1e-9);
}
