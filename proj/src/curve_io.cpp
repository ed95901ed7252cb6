#include "contactlab/curve_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace contactlab {

namespace {

using nlohmann::json;

json curve_to_json_impl(const detail::CurveBase& c, int extra_dim, int samples) {
    json j;
    j["n"] = extra_dim == 1 ? (c.dim() - 1) / 2 : c.dim() / 2;
    j["closed"] = c.closed();
    json rows = json::array();
    const auto params = c.is_sampled() && samples <= 0 ? c.sample_params() : c.sample_params(samples);
    for (double t : params) {
        json row = json::array();
        row.push_back(t);
        const Vec p = c.position(t);
        for (int k = 0; k < p.size(); ++k) row.push_back(p[k]);
        rows.push_back(std::move(row));
    }
    j["samples"] = std::move(rows);
    if (c.provenance()) {
        const Provenance& pv = *c.provenance();
        j["provenance"] = {{"construction", pv.construction},
                           {"epsilon", pv.epsilon},
                           {"loops", pv.loops},
                           {"turns", pv.turns}};
    }
    return j;
}

struct ParsedCurve {
    int n = 0;
    bool closed = false;
    std::vector<double> ts;
    std::vector<Vec> pts;
    std::optional<Provenance> prov;
};

ParsedCurve parse_curve(const std::string& text, bool space) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw contract_error(std::string("curve json: parse failure: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("closed") || !j.contains("samples"))
        throw contract_error("curve json: need fields n, closed, samples");
    ParsedCurve out;
    out.n = j.at("n").get<int>();
    if (out.n < 1) throw contract_error("curve json: n must be positive");
    out.closed = j.at("closed").get<bool>();
    const int row_len = 1 + 2 * out.n + (space ? 1 : 0);
    const auto& rows = j.at("samples");
    if (!rows.is_array()) throw contract_error("curve json: samples must be an array");
    for (const auto& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != row_len)
            throw contract_error("curve json: bad sample row length");
        out.ts.push_back(row.at(0).get<double>());
        Vec p(row_len - 1);
        for (int k = 1; k < row_len; ++k) p[k - 1] = row.at(static_cast<size_t>(k)).get<double>();
        out.pts.push_back(std::move(p));
    }
    if (j.contains("provenance")) {
        const auto& pv = j.at("provenance");
        Provenance p;
        p.construction = pv.value("construction", std::string());
        p.epsilon = pv.value("epsilon", 0.0);
        p.loops = pv.value("loops", 0L);
        p.turns = pv.value("turns", 0L);
        out.prov = std::move(p);
    }
    return out;
}

} // namespace

std::string space_curve_to_json(const SpaceCurve& c, int samples) {
    return curve_to_json_impl(c, 1, samples).dump(2);
}

std::string planar_curve_to_json(const PlanarCurve& c, int samples) {
    return curve_to_json_impl(c, 0, samples).dump(2);
}

SpaceCurve space_curve_from_json(const std::string& text) {
    auto parsed = parse_curve(text, true);
    auto c = SpaceCurve::sampled(parsed.n, std::move(parsed.ts), std::move(parsed.pts),
                                 parsed.closed);
    if (parsed.prov) c = c.with_provenance(*parsed.prov);
    return c;
}

PlanarCurve planar_curve_from_json(const std::string& text) {
    auto parsed = parse_curve(text, false);
    auto c = PlanarCurve::sampled(parsed.n, std::move(parsed.ts), std::move(parsed.pts),
                                  parsed.closed);
    if (parsed.prov) c = c.with_provenance(*parsed.prov);
    return c;
}

SpaceCurve load_space_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw contract_error("load_space_curve: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return space_curve_from_json(ss.str());
}

void save_space_curve(const SpaceCurve& c, const std::string& path, int samples) {
    std::ofstream out(path);
    if (!out) throw contract_error("save_space_curve: cannot open " + path);
    out << space_curve_to_json(c, samples) << "\n";
}

} // namespace contactlab
