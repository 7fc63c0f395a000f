#include "almostperiods/json_io.hpp"

namespace almostperiods {

Json rational_to_json(const Rational& r) { return r.json_str(); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw input_error("expected a rational \"a/b\" string");
    return Rational::parse(j.get<std::string>());
}

Json params_to_json(const ModelParams& p) {
    Json j;
    j["p"] = p.p;
    j["s"] = p.s;
    j["L"] = p.L;
    j["N"] = rational_to_json(p.N);
    j["m"] = p.m;
    j["d"] = p.d;
    return j;
}

ModelParams params_from_json(const Json& j) {
    ModelParams p;
    if (j.contains("p")) p.p = j.at("p").get<int>();
    if (j.contains("s")) p.s = j.at("s").get<int>();
    if (j.contains("L")) p.L = j.at("L").get<int>();
    if (j.contains("N")) p.N = rational_from_json(j.at("N"));
    if (j.contains("m")) p.m = j.at("m").get<int>();
    if (j.contains("d")) p.d = j.at("d").get<int>();
    return p;
}

Json eldiv_to_json(const EldivSeq& g) {
    Json entries = Json::array();
    for (const auto& e : g.entries()) entries.push_back(rational_to_json(e));
    return Json{{"entries", entries}};
}

EldivSeq eldiv_from_json(const Json& j) {
    std::vector<Rational> entries;
    for (const auto& e : j.at("entries")) entries.push_back(rational_from_json(e));
    return EldivSeq(std::move(entries));
}

Json matrix_to_json(const PuiseuxField& f, const MatrixOverO& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols; ++j) row.push_back(f.to_string(m.at(i, j)));
        rows.push_back(row);
    }
    return Json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

MatrixOverO matrix_from_json(const PuiseuxField& f, const Json& j) {
    size_t rows = j.at("rows").get<size_t>();
    size_t cols = j.at("cols").get<size_t>();
    if (rows < 1 || cols < 1) throw input_error("matrix dimensions must be positive");
    const Json& entries = j.at("entries");
    if (entries.size() != rows) throw input_error("entry row count mismatch");
    MatrixOverO m = make_matrix(f, rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (entries[i].size() != cols) throw input_error("entry column count mismatch");
        for (size_t c = 0; c < cols; ++c)
            m.at(i, c) = f.parse(entries[i][c].get<std::string>());
    }
    check_integral(f, m);
    return m;
}

Json module_to_json(const FPTorsionModule& m) {
    Json divisors = Json::array(), flags = Json::array();
    for (size_t i = 0; i < m.rank(); ++i) {
        divisors.push_back(rational_to_json(m.gammas[i]));
        flags.push_back(m.flags[i] == DivisorFlag::open ? "open" : "closed");
    }
    return Json{{"divisors", divisors}, {"flags", flags}};
}

FPTorsionModule module_from_json(const Json& j) {
    std::vector<Rational> gammas;
    std::vector<DivisorFlag> flags;
    for (const auto& e : j.at("divisors")) gammas.push_back(rational_from_json(e));
    if (j.contains("flags")) {
        for (const auto& e : j.at("flags")) {
            std::string s = e.get<std::string>();
            if (s == "open") flags.push_back(DivisorFlag::open);
            else if (s == "closed") flags.push_back(DivisorFlag::closed);
            else throw input_error("flag must be \"open\" or \"closed\"");
        }
    }
    return make_module(std::move(gammas), std::move(flags));
}

Json witt_to_json(const WittRing& w, const WittElem& x) {
    Json digits = Json::array();
    for (const auto& d : w.digits(x)) digits.push_back(w.base().to_string(d));
    return Json{{"digits", digits}};
}

WittElem witt_from_json(const WittRing& w, const Json& j) {
    std::vector<PuiseuxElem> digits;
    for (const auto& d : j.at("digits")) digits.push_back(w.base().parse(d.get<std::string>()));
    return w.from_digits(digits);
}

Json bdr_to_json(const BdrRing& b, const BdRElem& x) {
    Json j = witt_to_json(b.witt(), x.num);
    j["pshift"] = x.pshift;
    j["d"] = b.fil_degree();
    return j;
}

BdRElem bdr_from_json(const BdrRing& b, const Json& j) {
    WittElem num = witt_from_json(b.witt(), j);
    int pshift = j.value("pshift", 0);
    if (j.contains("d") && j.at("d").get<int>() != b.fil_degree())
        throw input_error("Fil degree mismatch");
    return b.make(num, pshift);
}

Json zpm_to_json(const ZpmMatrix& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
        rows.push_back(row);
    }
    return Json{{"p", m.p}, {"m", m.m}, {"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

ZpmMatrix zpm_from_json(const Json& j) {
    long long p = j.at("p").get<long long>();
    int m = j.at("m").get<int>();
    size_t rows = j.at("rows").get<size_t>();
    size_t cols = j.at("cols").get<size_t>();
    if (rows < 1 || cols < 1) throw input_error("matrix dimensions must be positive");
    ZpmMatrix out = zpm_make(p, m, rows, cols);
    const Json& entries = j.at("entries");
    if (entries.size() != rows) throw input_error("entry row count mismatch");
    for (size_t i = 0; i < rows; ++i) {
        if (entries[i].size() != cols) throw input_error("entry column count mismatch");
        for (size_t c = 0; c < cols; ++c) {
            long long v = entries[i][c].get<long long>();
            out.at(i, c) = ((v % out.q) + out.q) % out.q;
        }
    }
    return out;
}

Json snf_to_json(const PuiseuxField& f, const SnfResult& s) {
    Json divisors = Json::array();
    for (const auto& d : s.diag)
        divisors.push_back(d ? Json(rational_to_json(*d)) : Json("inf"));
    Json j;
    j["divisors"] = divisors;
    j["rank"] = s.rank;
    j["d"] = matrix_to_json(f, s.d);
    j["u"] = matrix_to_json(f, s.u);
    j["v"] = matrix_to_json(f, s.v);
    return j;
}

Json exact_report_to_json(const ExactReport& r) {
    Json j;
    j["exact"] = r.exact;
    j["is_complex"] = r.is_complex;
    j["f_injective"] = r.f_injective;
    j["g_surjective"] = r.g_surjective;
    j["middle_exact"] = r.middle_exact;
    j["lambda"] = Json{{"lhs", rational_to_json(r.lambda_mid)},
                       {"rhs", rational_to_json(r.lambda_sum)}};
    j["lambda_additive"] = r.lambda_additive;
    j["majorization"] = r.majorization_ok;
    if (!r.middle_homology.empty()) j["failing_homology"] = eldiv_to_json(r.middle_homology);
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j;
}

Json tower_report_to_json(const TowerReport& r) {
    Json levels = Json::array();
    for (const auto& lv : r.levels) {
        levels.push_back(Json{{"k", lv.k},
                              {"pq_is_pi", lv.pq_is_pi},
                              {"middle_exact", lv.middle_exact},
                              {"ses_exact", lv.ses_exact},
                              {"lambda_additive", lv.lambda_additive},
                              {"majorization", lv.majorization_ok},
                              {"divisor_growth", lv.divisor_growth}});
    }
    Json phi = Json::array();
    for (const auto& ph : r.phi)
        phi.push_back(Json{{"k", ph.k}, {"compatible", ph.compatible}});
    Json j;
    j["m1_finitely_generated"] = r.m1_finitely_generated;
    j["levels"] = levels;
    j["phi"] = phi;
    j["all_ok"] = r.all_ok;
    if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
    return j;
}

Json shape_to_json(const CohomologyShape& s, int m) {
    Json orders = Json::array();
    // cyclic orders reported as valuations in the v(p) = 1 normalization
    for (int e : s.all_exponents(m)) orders.push_back(Rational(e).json_str());
    return Json{{"orders", orders}, {"free_rank", s.free_rank}};
}

Json cohom_table_to_json(const CohomTable& t) {
    Json lines = Json::array();
    for (const auto& line : t.lines) {
        Json tuple = Json::array();
        for (long long a : line.tuple_num)
            tuple.push_back(Rational(a, line.tuple_den).json_str());
        Json per_q = Json::array();
        for (int q = 0; q <= t.n; ++q)
            per_q.push_back(shape_to_json(line.matrix_shapes[static_cast<size_t>(q)], t.m));
        Json jl;
        jl["tuple"] = tuple;
        jl["level"] = line.level;
        jl["h"] = per_q;
        jl["annihilator_valuation"] =
            line.annihilator_val ? Json(line.annihilator_val->json_str()) : Json("inf");
        jl["annihilated"] = line.annihilated;
        jl["matches_closed_form"] = line.matches_closed_form;
        lines.push_back(jl);
    }
    Json survivors = Json::array();
    for (const auto& s : t.survivors)
        survivors.push_back(Json{{"eps", s.eps.json_str()},
                                 {"count", s.count},
                                 {"expected", s.expected}});
    Json j;
    j["p"] = t.p;
    j["n"] = t.n;
    j["L"] = t.L;
    j["m"] = t.m;
    j["lines"] = lines;
    j["summary"] = Json{{"integral_ok", t.integral_ok},
                        {"annihilation_ok", t.annihilation_ok},
                        {"closed_form_ok", t.closed_form_ok},
                        {"survivors", survivors},
                        {"survivors_ok", t.survivors_ok},
                        {"all_ok", t.all_ok}};
    return j;
}

Json fd_report_to_json(const FiniteDifferenceReport& r) {
    Json j;
    j["deg_bound"] = r.deg_bound;
    j["kernel_is_constants"] = r.kernel_is_constants;
    j["surjective_below_bound"] = r.surjective_below_bound;
    j["all_ok"] = r.all_ok;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

} // namespace almostperiods
