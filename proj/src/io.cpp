#include "hodgeft/io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hft {

using nlohmann::json;

namespace {

Vec vec_from_json(const json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw std::invalid_argument("expected array of " + std::to_string(dim) + " rationals");
    Vec v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(parse_rational(x.get<std::string>()));
    return v;
}

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rational_str(x));
    return a;
}

RatMat mat_from_json(const json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw std::invalid_argument("expected " + std::to_string(dim) + " matrix rows");
    RatMat m;
    for (const auto& row : j) m.push_back(vec_from_json(row, dim));
    return m;
}

json mat_to_json(const RatMat& m) {
    json a = json::array();
    for (const auto& row : m) a.push_back(vec_to_json(row));
    return a;
}

}  // namespace

Algebra algebra_from_json(const json& j) {
    Algebra a;
    if (!j.is_object()) throw std::invalid_argument("algebra spec must be a JSON object");
    a.name = j.value("name", "");
    a.dim = j.at("dim").get<int>();
    if (a.dim <= 0) throw std::invalid_argument("dim must be positive");
    size_t n = static_cast<size_t>(a.dim);
    for (const auto& p : j.at("parities")) {
        int v = p.get<int>();
        if (v != 0 && v != 1) throw std::invalid_argument("parities must be 0 or 1");
        a.parities.push_back(v ? Parity::odd : Parity::even);
    }
    if (a.parities.size() != n) throw std::invalid_argument("parities size mismatch");
    a.unit = j.at("unit").get<int>();
    if (a.unit < 0 || a.unit >= a.dim) throw std::invalid_argument("unit index out of range");

    a.mul.assign(n, std::vector<Vec>(n, Vec(n, Rational(0))));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    for (const auto& rec : j.at("mul")) {
        int i = rec.at("i").get<int>(), jj = rec.at("j").get<int>();
        if (i < 0 || i >= a.dim || jj < 0 || jj >= a.dim)
            throw std::invalid_argument("mul record index out of range");
        a.mul[static_cast<size_t>(i)][static_cast<size_t>(jj)] = vec_from_json(rec.at("out"), a.dim);
        given[static_cast<size_t>(i)][static_cast<size_t>(jj)] = true;
    }
    // Fill missing (j,i) from (i,j) by supercommutativity; explicit entries win.
    for (size_t i = 0; i < n; ++i)
        for (size_t jj = 0; jj < n; ++jj)
            if (given[i][jj] && !given[jj][i]) {
                int s = koszul(a.parities[i], a.parities[jj]);
                a.mul[jj][i] = scale(Rational(s), a.mul[i][jj]);
                given[jj][i] = true;
            }

    a.integral = vec_from_json(j.at("integral"), a.dim);
    a.Q.parity = Parity::odd;
    a.Q.m = mat_from_json(j.at("Q"), a.dim);
    a.Gm.parity = Parity::odd;
    a.Gm.m = mat_from_json(j.at("Gminus"), a.dim);
    for (const auto& i : j.at("h0")) a.h0.push_back(i.get<int>());
    for (const auto& b : j.at("h4_blocks")) {
        if (!b.is_array() || b.size() != 4) throw std::invalid_argument("h4_blocks entries must have 4 indices");
        a.blocks.push_back({b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()});
    }
    a.finalize();
    return a;
}

json algebra_to_json(const Algebra& a) {
    json j;
    if (!a.name.empty()) j["name"] = a.name;
    j["dim"] = a.dim;
    json par = json::array();
    for (Parity p : a.parities) par.push_back(static_cast<int>(p));
    j["parities"] = par;
    j["unit"] = a.unit;
    json mul = json::array();
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k) {
            const Vec& out = a.mul[static_cast<size_t>(i)][static_cast<size_t>(k)];
            if (is_zero(out)) continue;
            mul.push_back(json{{"i", i}, {"j", k}, {"out", vec_to_json(out)}});
        }
    j["mul"] = mul;
    j["integral"] = vec_to_json(a.integral);
    j["Q"] = mat_to_json(a.Q.m);
    j["Gminus"] = mat_to_json(a.Gm.m);
    j["h0"] = a.h0;
    json blocks = json::array();
    for (const auto& b : a.blocks) blocks.push_back(json::array({b.e, b.qe, b.ge, b.qge}));
    j["h4_blocks"] = blocks;
    return j;
}

json parse_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    json j;
    f >> j;
    return j;
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << j.dump(2) << "\n";
}

Algebra load_algebra_file(const std::string& path) {
    return algebra_from_json(parse_json_file(path));
}

void save_algebra_file(const Algebra& a, const std::string& path) {
    write_json_file(algebra_to_json(a), path);
}

}  // namespace hft
