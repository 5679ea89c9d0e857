#include "wsuper/report.hpp"

#include "wsuper/algebra_json.hpp"
#include "wsuper/bounds.hpp"
#include "wsuper/modular.hpp"
#include "wsuper/repsystem.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <iostream>

namespace wsuper {

using nlohmann::json;

JobSpec JobSpec::parse(const json& j) {
    JobSpec spec;
    spec.algebra = j.at("algebra");
    spec.nilpotent = j.value("nilpotent", json{{"type", "zero"}});
    if (j.contains("character")) spec.character = j.at("character");
    spec.degree_cap = j.value("degree_cap", 8);
    if (const char* env = std::getenv("WSUPER_DEGREE_CAP")) spec.degree_cap = std::atoi(env);
    if (j.contains("primes"))
        for (auto& p : j.at("primes")) spec.primes.push_back(p.get<long>());
    if (!j.contains("tasks") || j.at("tasks").empty())
        throw std::invalid_argument("jobspec: task list must be nonempty");
    for (auto& t : j.at("tasks")) spec.tasks.push_back(t.get<std::string>());
    if (spec.degree_cap < 0) throw std::invalid_argument("jobspec: degree_cap must be >= 0");
    for (long p : spec.primes)
        if (p <= 2) throw std::invalid_argument("jobspec: primes must be odd");
    return spec;
}

namespace {

std::string parity_str(Parity p) { return p == Parity::Even ? "even" : "odd"; }

json poly_json(const PBWContext<Rat>& ctx, const SuperPoly<Rat>& p) {
    json terms = json::array();
    for (auto& [m, c] : p) terms.push_back({ctx.mono_str(m), c.str()});
    return terms;
}

json theta_poly_json(const ThetaPoly<Rat>& f) {
    json terms = json::array();
    for (auto& [tm, c] : f) {
        std::string name;
        if (tm.empty()) name = "1";
        for (auto& [g, e] : tm) {
            if (!name.empty() && name != "1") name += " ";
            if (name == "1") name.clear();
            name += "T" + std::to_string(g + 1);
            if (e > 1) name += "^" + std::to_string(e);
        }
        terms.push_back({name, c.str()});
    }
    return terms;
}

json form_report_json(const FormReport& r) {
    return json{{"even", r.even},
                {"supersymmetric", r.supersymmetric},
                {"invariant", r.invariant},
                {"nondegenerate", r.nondegenerate}};
}

json admissibility_json(const AdmissibilityReport& r) {
    return json{{"odd_prime", r.odd_prime},
                {"avoids_bad_primes", r.avoids_bad_primes},
                {"scalars_reducible", r.scalars_reducible},
                {"gram_invertible", r.gram_invertible},
                {"ok", r.ok()}};
}

struct Pipeline {
    LieSuperalgebra<Rat> g;
    Vec<Rat> e;
    NilpotentFrame<Rat> frame;
    PBWContext<Rat> ctx;
    std::unique_ptr<WAlgebra<Rat>> w;
    bool gens_ready = false;
    std::unique_ptr<RelationTable<Rat>> table;
    int cap;

    Pipeline(const JobSpec& spec)
        : g(algebra_from_json(spec.algebra)), e(element_from_json(g, spec.nilpotent)),
          frame(build_frame(g, e)), ctx(PBWContext<Rat>::build(frame)), cap(spec.degree_cap) {}

    WAlgebra<Rat>& walg() {
        if (!w) w = std::make_unique<WAlgebra<Rat>>(ctx, cap);
        if (!gens_ready) {
            std::cerr << "[wsuper] computing generators through degree " << cap << "\n";
            w->compute_generators();
            gens_ready = true;
        }
        return *w;
    }
    RelationTable<Rat>& relations() {
        if (!table) {
            std::cerr << "[wsuper] extracting relations\n";
            table = std::make_unique<RelationTable<Rat>>(commutator_table(walg()));
        }
        return *table;
    }
};

json task_describe(Pipeline& pl, const JobSpec& spec) {
    json out;
    auto& fr = pl.frame;
    out["algebra"] = {{"type", pl.g.type_tag},
                      {"dim_even", pl.g.dim_even()},
                      {"dim_odd", pl.g.dim_odd()}};
    out["form"] = form_report_json(verify_form(pl.g));
    out["structure_valid"] = validate(pl.g);
    json grading = json::object();
    for (int w = fr.grading.min_weight(); w <= fr.grading.max_weight(); ++w) {
        int de = fr.grading.dim_at(w, Parity::Even), dodd = fr.grading.dim_at(w, Parity::Odd);
        if (de || dodd) grading[std::to_string(w)] = {de, dodd};
    }
    out["grading"] = grading;
    out["counters"] = {{"s", fr.s},     {"r", fr.r},   {"t", fr.t},   {"tprime", fr.tprime},
                       {"l", fr.l},     {"q", fr.q},   {"d0", fr.d0}, {"d1", fr.d1},
                       {"parity", fr.r_odd() ? "odd" : "even"}};
    out["degenerate"] = fr.degenerate;
    out["c_mid"] = fr.c_mid.str();
    out["frame_checks"] = {{"m_perp_decomposition", check_mperp_decomposition(fr)},
                           {"p_decomposition", check_p_decomposition(fr)},
                           {"grading_properties", check_grading_properties(fr)}};
    json adm = json::object();
    for (long p : spec.primes) {
        try {
            auto ma = reduce_mod_p(pl.g, p);
            adm[std::to_string(p)] = admissibility_json(ma.report);
            adm[std::to_string(p)]["delta"] = delta_of(fr, p).get_str();
            adm[std::to_string(p)]["kw_factor"] = kw_factor(fr, p).get_str();
        } catch (const std::exception& ex) {
            adm[std::to_string(p)] = {{"ok", false}, {"error", ex.what()}};
        }
    }
    out["admissibility"] = adm;
    return out;
}

json task_wgens(Pipeline& pl) {
    auto& w = pl.walg();
    json out;
    json gens = json::array();
    for (int i = 0; i < w.gen_count(); ++i) {
        const auto& gen = w.gen(i);
        gens.push_back({{"name", "T" + std::to_string(i + 1)},
                        {"leading", pl.ctx.letter(gen.leading_letter).name},
                        {"weight", gen.weight},
                        {"parity", parity_str(gen.parity)},
                        {"terms", poly_json(pl.ctx, gen.theta)}});
    }
    out["generators"] = gens;
    auto rep = pbw_check(w, pl.cap);
    out["pbw"] = {{"counts_match", rep.counts_match},
                  {"theta_monomials_independent", rep.theta_monomials_independent},
                  {"expected", rep.expected},
                  {"found", rep.found}};
    out["sigma_fixes_generators"] = sigma_fixes_generators(w);
    json wp;
    auto wrep = check_w_prime(pl.ctx, std::max(0, pl.cap - 4));
    wp["identity_holds"] = wrep.identity_holds;
    wp["vmid_in_w_not_wprime"] = wrep.vmid_in_w_not_wprime;
    wp["r_odd"] = pl.ctx.r_odd();
    out["w_prime"] = wp;
    return out;
}

json task_relations(Pipeline& pl) {
    auto& table = pl.relations();
    json out;
    json pairs = json::array();
    for (auto& rel : table.rels) {
        json alpha = json::object();
        for (auto& [k, c] : rel.alpha) alpha["T" + std::to_string(k + 1)] = c.str();
        pairs.push_back({{"i", rel.i + 1},
                         {"j", rel.j + 1},
                         {"F", theta_poly_json(rel.F)},
                         {"alpha", alpha},
                         {"top_has_no_const_linear", rel.top_has_no_const_linear},
                         {"refined_level_clean", rel.refined_level_clean}});
    }
    out["pairs"] = pairs;
    out["closed"] = table.closed;
    out["leading_parts_match"] = table.leading_parts_match;
    out["antisymmetry_ok"] = table.antisymmetry_ok;
    out["odd_diagonal_is_cmid"] = table.odd_diagonal_is_cmid;
    return out;
}

json polymv_json(const PolyMV<Rat>& p, const std::vector<std::string>& names) {
    return json(p.str(names));
}

json task_repsearch(Pipeline& pl, const JobSpec& spec) {
    auto& w = pl.walg();
    auto& table = pl.relations();
    json out;
    auto sys1 = onedim_system(w, table);
    json one;
    one["variables"] = sys1.var_names;
    json polys1 = json::array();
    for (size_t i = 0; i < sys1.polys.size(); ++i)
        polys1.push_back({sys1.labels[i], polymv_json(sys1.polys[i], sys1.var_names)});
    one["polynomials"] = polys1;
    one["vacuous_pairs"] = sys1.vacuous_pairs;
    one["zero_point_solves"] = sys1.all_constant_terms_zero();
    one["trivially_infeasible"] = sys1.trivially_infeasible();
    out["onedim"] = one;

    if (pl.ctx.r_odd()) {
        auto sys2 = twodim_system(w, table);
        json two;
        two["variables"] = sys2.var_names;
        json polys2 = json::array();
        for (size_t i = 0; i < sys2.polys.size(); ++i)
            polys2.push_back({sys2.labels[i], polymv_json(sys2.polys[i], sys2.var_names)});
        two["polynomials"] = polys2;
        json sols = json::object();
        for (long p : spec.primes) {
            try {
                auto found = search_rep_modular(sys2, p);
                json arr = json::array();
                for (auto& sol : found) {
                    json pt = json::array();
                    for (auto& v : sol) pt.push_back(v.value());
                    arr.push_back(pt);
                }
                sols[std::to_string(p)] = {{"count", found.size()}, {"points", arr}};
                if (!found.empty()) {
                    auto lifted = lift_modular_solution(sys2, found.front(), p);
                    if (lifted) {
                        json pt = json::array();
                        for (auto& v : *lifted) pt.push_back(v.str());
                        sols[std::to_string(p)]["lifted"] = pt;
                        sols[std::to_string(p)]["lift_verified"] =
                            verify_rep(sys2, *lifted).empty();
                    } else {
                        sols[std::to_string(p)]["lifted"] = nullptr;
                    }
                }
            } catch (const std::exception& ex) {
                sols[std::to_string(p)] = {{"error", ex.what()}};
            }
        }
        two["modular_search"] = sols;
        out["twodim"] = two;
    }
    return out;
}

json task_modular(Pipeline& pl, const JobSpec& spec) {
    json out = json::object();
    for (long p : spec.primes) {
        json entry;
        try {
            auto ma = reduce_mod_p(pl.g, p);
            entry["admissibility"] = admissibility_json(ma.report);
            entry["restricted_b"] = check_restricted_b(ma);
            entry["dim_reduced_env"] = dim_reduced_env(pl.g, p).get_str();
            entry["delta"] = delta_of(pl.frame, p).get_str();
            entry["kw_factor"] = kw_factor(pl.frame, p).get_str();
            entry["reduced_w_dim"] = reduced_w_dim(pl.frame, p).get_str();
            entry["matrix_size_identity"] = matrix_size_identity(pl.g, pl.frame, p);
            // rank-one baby Verma when the zero weight space is a line
            bool rank_one = !pl.frame.degenerate &&
                            pl.frame.grading.dim_at(0, Parity::Even) == 1 &&
                            pl.frame.grading.dim_at(0, Parity::Odd) == 0;
            if (rank_one) {
                auto mfr = reduce_frame(pl.frame, p);
                BabyVerma z(ma, mfr, Fp(0, p));
                json bv;
                bv["dim"] = z.dim();
                std::vector<Matrix<Fp>> acts;
                for (int i = 0; i < ma.g.dim(); ++i) acts.push_back(z.action(ma.g.basis_vec(i)));
                bv["cyclic_from_every_basis_vector"] =
                    cyclic_from_every_basis_vector(acts, z.dim());
                bv["generated_algebra_dim"] = generated_algebra_dim(acts, z.dim());
                std::vector<Matrix<Fp>> macts;
                std::vector<Fp> mchi;
                for (auto& mv : pl.frame.m_basis) {
                    macts.push_back(z.action(reduce_vec(mv, p)));
                    mchi.push_back(Fp::from_rat(pl.frame.chi_of(mv), p));
                }
                bv["whittaker_dim"] = whittaker_vectors(macts, mchi).size();
                bv["kw_divisible"] = kw_divisible(mpz_class(z.dim()), kw_factor(pl.frame, p));
                entry["baby_verma"] = bv;
            } else {
                entry["baby_verma"] = {{"skipped", "supported at rank one only"}};
            }
        } catch (const std::exception& ex) {
            entry["error"] = ex.what();
        }
        out[std::to_string(p)] = entry;
    }
    return out;
}

json task_tensorcheck(Pipeline& pl, const JobSpec& spec) {
    json out = json::object();
    for (long p : spec.primes) {
        json entry;
        try {
            std::cerr << "[wsuper] transition check at p = " << p << "\n";
            auto rep = transition_tensor_check<Rat>(pl.frame, p, pl.cap);
            entry["independent"] = rep.independent;
            entry["top_term_law"] = rep.top_term_law;
            entry["witnesses"] = rep.witnesses;
            entry["family_total"] = rep.total;
            json counts = json::object();
            for (auto& [d, n] : rep.family_counts) counts[std::to_string(d)] = n;
            entry["family_counts"] = counts;
        } catch (const std::exception& ex) {
            entry["error"] = ex.what();
        }
        out[std::to_string(p)] = entry;
    }
    return out;
}

json task_bounds(Pipeline& pl, const JobSpec& spec) {
    json out;
    Vec<Rat> x = spec.character.is_null() ? pl.e : element_from_json(pl.g, spec.character);
    auto an = analyze_character(pl.g, x);
    json summands = json::array();
    for (auto& [a, b] : an.summand_d) summands.push_back({a, b});
    out["analysis"] = {{"d0_direct", an.d0_direct},
                       {"d1_direct", an.d1_direct},
                       {"d0_levi", an.d0_levi},
                       {"d1_levi", an.d1_levi},
                       {"paths_agree", an.paths_agree},
                       {"u0", an.u0},
                       {"u1", an.u1},
                       {"summand_d", summands}};
    json per_p = json::object();
    for (long p : spec.primes) {
        auto bd = arbitrary_char_bound(an, p);
        auto ds = direct_sum_bound(an.summand_d.empty()
                                       ? std::vector<std::pair<int, int>>{{0, 0}}
                                       : an.summand_d,
                                   p);
        per_p[std::to_string(p)] = {{"bound", bd.bound.get_str()},
                                    {"l", bd.l},
                                    {"at_most_one_odd", bd.at_most_one_odd},
                                    {"compose_identity", bd.compose_identity},
                                    {"direct_sum_bound", ds.bound.get_str()}};
    }
    out["per_prime"] = per_p;
    return out;
}

} // namespace

RunResult run_job(const json& jobspec_json) {
    RunResult result;
    JobSpec spec;
    try {
        spec = JobSpec::parse(jobspec_json);
    } catch (const std::exception& ex) {
        result.spec_error = true;
        result.report = {{"spec_error", ex.what()}};
        return result;
    }
    json tasks = json::object();
    std::unique_ptr<Pipeline> pl;
    try {
        pl = std::make_unique<Pipeline>(spec);
    } catch (const std::exception& ex) {
        result.spec_error = true;
        result.report = {{"spec_error", ex.what()}};
        return result;
    }
    for (auto& task : spec.tasks) {
        try {
            if (task == "describe") tasks[task] = task_describe(*pl, spec);
            else if (task == "wgens") tasks[task] = task_wgens(*pl);
            else if (task == "relations") tasks[task] = task_relations(*pl);
            else if (task == "repsearch") tasks[task] = task_repsearch(*pl, spec);
            else if (task == "modular") tasks[task] = task_modular(*pl, spec);
            else if (task == "tensorcheck") tasks[task] = task_tensorcheck(*pl, spec);
            else if (task == "bounds") tasks[task] = task_bounds(*pl, spec);
            else {
                result.spec_error = true;
                tasks[task] = {{"error", "unknown task"}};
            }
        } catch (const std::exception& ex) {
            result.task_failure = true;
            tasks[task] = {{"error", ex.what()}};
        }
    }
    result.report = json{{"degree_cap", spec.degree_cap}, {"tasks", tasks}};
    json primes = json::array();
    for (long p : spec.primes) primes.push_back(p);
    result.report["primes"] = primes;
    // deterministic exact-arithmetic statistics
    json stats;
    stats["algebra_dim"] = pl->g.dim();
    stats["alphabet_letters"] = pl->ctx.letter_count();
    stats["monomials_within_cap"] =
        static_cast<long>(qchi_monomials(pl->ctx, pl->cap).size());
    if (pl->gens_ready) {
        long terms = 0;
        size_t max_bits = 0;
        for (auto& gen : pl->w->gens()) {
            terms += static_cast<long>(gen.theta.size());
            for (auto& [m, c] : gen.theta) max_bits = std::max(max_bits, c.bit_size());
        }
        stats["generator_terms"] = terms;
        stats["max_generator_coefficient_bits"] = max_bits;
    }
    result.report["stats"] = stats;
    return result;
}

namespace {
void diff_rec(const json& a, const json& b, const std::string& path,
              std::vector<std::string>& out) {
    if (a.is_number() && b.is_number()) {
        if (a != b) out.push_back(path + ": " + a.dump() + " vs " + b.dump());
        return;
    }
    if (a.type() != b.type()) {
        out.push_back(path + ": type mismatch");
        return;
    }
    if (a.is_object()) {
        for (auto& [k, v] : a.items()) {
            if (!b.contains(k)) {
                out.push_back(path + "/" + k + ": missing in fixture");
                continue;
            }
            diff_rec(v, b.at(k), path + "/" + k, out);
        }
        for (auto& [k, v] : b.items())
            if (!a.contains(k)) out.push_back(path + "/" + k + ": missing in report");
        return;
    }
    if (a.is_array()) {
        if (a.size() != b.size()) {
            out.push_back(path + ": array size " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
            return;
        }
        for (size_t i = 0; i < a.size(); ++i)
            diff_rec(a.at(i), b.at(i), path + "[" + std::to_string(i) + "]", out);
        return;
    }
    if (a != b) out.push_back(path + ": " + a.dump() + " vs " + b.dump());
}
} // namespace

std::vector<std::string> golden_compare(const json& report, const json& fixture) {
    std::vector<std::string> out;
    diff_rec(report, fixture, "", out);
    return out;
}

std::string render_text(const json& report) {
    std::string out;
    out += "wsuper report (degree cap " +
           std::to_string(report.value("degree_cap", 0)) + ")\n";
    if (!report.contains("tasks")) return out;
    for (auto& [task, body] : report.at("tasks").items()) {
        out += "\n== " + task + " ==\n";
        if (body.contains("error")) {
            out += "  error: " + body.at("error").get<std::string>() + "\n";
            continue;
        }
        if (task == "describe") {
            auto& c = body.at("counters");
            out += "  dims (" + std::to_string(body.at("algebra").at("dim_even").get<int>()) +
                   "|" + std::to_string(body.at("algebra").at("dim_odd").get<int>()) + ")";
            out += ", d0 = " + std::to_string(c.at("d0").get<int>()) +
                   ", d1 = " + std::to_string(c.at("d1").get<int>()) + ", parity " +
                   c.at("parity").get<std::string>() + "\n";
            out += "  form: " + body.at("form").dump() + "\n";
            out += "  frame checks: " + body.at("frame_checks").dump() + "\n";
        } else if (task == "wgens") {
            for (auto& gen : body.at("generators"))
                out += "  " + gen.at("name").get<std::string>() + " <- " +
                       gen.at("leading").get<std::string>() + " (weight " +
                       std::to_string(gen.at("weight").get<int>()) + ", " +
                       gen.at("parity").get<std::string>() + ")\n";
            out += "  PBW counts match: " + body.at("pbw").at("counts_match").dump() + "\n";
        } else if (task == "relations") {
            for (auto& rel : body.at("pairs")) {
                out += "  [T" + std::to_string(rel.at("i").get<int>()) + ",T" +
                       std::to_string(rel.at("j").get<int>()) + "] =";
                for (auto& term : rel.at("F"))
                    out += " + (" + term.at(1).get<std::string>() + ")*" +
                           term.at(0).get<std::string>();
                out += "\n";
            }
        } else {
            out += "  " + body.dump() + "\n";
        }
    }
    return out;
}

} // namespace wsuper
