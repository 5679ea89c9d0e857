#include "wsuper/algebra_json.hpp"

#include <nlohmann/json.hpp>

namespace wsuper {

using nlohmann::json;

namespace {

Rat rat_field(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    throw std::invalid_argument("expected a rational as integer or \"p/q\" string");
}

LieSuperalgebra<Rat> from_table(const json& spec) {
    LieSuperalgebra<Rat> g;
    g.type_tag = "table";
    for (auto& b : spec.at("basis")) {
        g.names.push_back(b.at("name").get<std::string>());
        std::string p = b.at("parity").get<std::string>();
        if (p != "even" && p != "odd") throw std::invalid_argument("parity must be even|odd");
        g.parity.push_back(p == "odd" ? Parity::Odd : Parity::Even);
    }
    int d = g.dim();
    g.summand_of.assign(d, 0);
    g.table.assign(d, std::vector<SparseRow<Rat>>(d));
    for (auto& entry : spec.at("brackets")) {
        // [i, j, k, coeff] with 0-based indices
        int i = entry.at(0).get<int>(), j = entry.at(1).get<int>(), k = entry.at(2).get<int>();
        g.table.at(i).at(j).emplace_back(k, rat_field(entry.at(3)));
    }
    g.gram = Matrix<Rat>(d, d);
    auto& form = spec.at("form");
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g.gram(i, j) = rat_field(form.at(i).at(j));
    if (!validate(g)) throw std::invalid_argument("table spec fails the structure validators");
    return g;
}

} // namespace

LieSuperalgebra<Rat> algebra_from_json(const json& spec) {
    std::string type = spec.at("type").get<std::string>();
    if (type == "gl") {
        bool traceless = spec.value("traceless", false);
        return build_gl<Rat>(spec.at("m").get<int>(), spec.at("n").get<int>(), traceless);
    }
    if (type == "sl")
        return build_gl<Rat>(spec.at("m").get<int>(), spec.at("n").get<int>(), true);
    if (type == "osp12n") return build_osp12n<Rat>(spec.at("n").get<int>());
    if (type == "D21a") return build_d21a<Rat>(rat_field(spec.at("a")));
    if (type == "toral") return build_toral<Rat>(spec.at("dim").get<int>());
    if (type == "direct_sum") {
        std::vector<LieSuperalgebra<Rat>> parts;
        for (auto& part : spec.at("parts")) parts.push_back(algebra_from_json(part));
        return direct_sum(parts);
    }
    if (type == "table") return from_table(spec);
    throw std::invalid_argument("unknown algebra type '" + type + "'");
}

Vec<Rat> element_from_json(const LieSuperalgebra<Rat>& g, const json& spec) {
    std::string type = spec.at("type").get<std::string>();
    if (type == "zero") return g.zero();
    if (type == "coeffs") {
        auto& vals = spec.at("values");
        if (static_cast<int>(vals.size()) != g.dim())
            throw std::invalid_argument("coefficient vector length does not match the basis");
        Vec<Rat> out = g.zero();
        for (int i = 0; i < g.dim(); ++i) out[i] = rat_field(vals.at(i));
        return out;
    }
    if (type == "gl_partition") {
        // e_lambda = e_M + e_N: principal nilpotent on the even block,
        // Jordan blocks of the given sizes on the odd block
        if (!g.has_matrices) throw std::invalid_argument("gl_partition needs a matrix algebra");
        int m = g.block_m, n = g.block_n;
        Matrix<Rat> e(m + n, m + n);
        int even_total = 0;
        for (auto& part : spec.at("even_parts")) even_total += part.get<int>();
        if (even_total != m) throw std::invalid_argument("even partition does not sum to m");
        int pos = 0;
        for (auto& part : spec.at("even_parts")) {
            int size = part.get<int>();
            for (int i = 0; i + 1 < size; ++i) e(pos + i, pos + i + 1) = Rat(1);
            pos += size;
        }
        int odd_total = 0;
        for (auto& part : spec.at("odd_parts")) odd_total += part.get<int>();
        if (odd_total != n) throw std::invalid_argument("odd partition does not sum to n");
        pos = m;
        for (auto& part : spec.at("odd_parts")) {
            int size = part.get<int>();
            for (int i = 0; i + 1 < size; ++i) e(pos + i, pos + i + 1) = Rat(1);
            pos += size;
        }
        // decompose in the basis
        int N = m + n, d = g.dim();
        Matrix<Rat> span(N * N, d);
        for (int b = 0; b < d; ++b)
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) span(i * N + j, b) = g.matrices[b](i, j);
        Vec<Rat> flat(N * N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) flat[i * N + j] = e(i, j);
        auto sol = span.solve(flat);
        if (!sol) throw std::invalid_argument("partition nilpotent is outside the algebra");
        return *sol;
    }
    throw std::invalid_argument("unknown element spec type '" + type + "'");
}

} // namespace wsuper
