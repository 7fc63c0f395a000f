#include "almostperiods/modules.hpp"

#include <algorithm>

namespace almostperiods {

EldivSeq FPTorsionModule::divisors() const {
    std::vector<Rational> nonzero;
    for (const auto& g : gammas)
        if (!g.is_zero()) nonzero.push_back(g);
    return EldivSeq(std::move(nonzero));
}

std::string FPTorsionModule::str() const {
    std::string out = "(";
    for (size_t i = 0; i < gammas.size(); ++i) {
        if (i) out += ",";
        out += gammas[i].str();
        if (flags[i] == DivisorFlag::open) out += "~";
    }
    return out + ")";
}

FPTorsionModule make_module(std::vector<Rational> gammas, std::vector<DivisorFlag> flags) {
    if (flags.empty()) flags.assign(gammas.size(), DivisorFlag::closed);
    if (flags.size() != gammas.size()) throw input_error("flag/divisor size mismatch");
    for (size_t i = 0; i < gammas.size(); ++i) {
        if (gammas[i] < Rational(0)) throw input_error("negative divisor");
        if (i && gammas[i - 1] < gammas[i]) throw input_error("divisors not nonincreasing");
        if (gammas[i].is_zero() && flags[i] == DivisorFlag::closed)
            throw input_error("closed zero factor is the zero module; drop it");
    }
    return FPTorsionModule{std::move(gammas), std::move(flags)};
}

FPTorsionModule module_from_divisors(const EldivSeq& d) {
    return make_module(d.entries());
}

ModuleMap make_map(const PuiseuxField& F, FPTorsionModule source, FPTorsionModule target,
                   MatrixOverO matrix) {
    if (matrix.rows != target.rank() || matrix.cols != source.rank())
        throw input_error("map matrix shape does not match module ranks");
    ModuleMap f{std::move(source), std::move(target), std::move(matrix)};
    if (!map_well_defined(F, f)) throw input_error("map fails the well-definedness condition");
    return f;
}

bool map_well_defined(const PuiseuxField& F, const ModuleMap& f) {
    for (size_t i = 0; i < f.matrix.rows; ++i)
        for (size_t j = 0; j < f.matrix.cols; ++j) {
            auto v = F.valuation(f.matrix.at(i, j));
            if (!v) continue; // zero at precision
            Rational bound = max(f.target.gammas[i] - f.source.gammas[j], Rational(0));
            if (*v < bound) return false;
        }
    return true;
}

ModuleMap compose(const PuiseuxField& F, const ModuleMap& g, const ModuleMap& f) {
    if (g.source.rank() != f.target.rank())
        throw input_error("composite of maps with mismatched middle module");
    return ModuleMap{f.source, g.target, mat_mul(F, g.matrix, f.matrix)};
}

bool maps_equal(const PuiseuxField& F, const ModuleMap& f, const ModuleMap& g) {
    if (f.matrix.rows != g.matrix.rows || f.matrix.cols != g.matrix.cols) return false;
    for (size_t i = 0; i < f.matrix.rows; ++i)
        for (size_t j = 0; j < f.matrix.cols; ++j) {
            PuiseuxElem diff = F.sub(f.matrix.at(i, j), g.matrix.at(i, j));
            auto v = F.valuation(diff);
            if (v && *v < f.target.gammas[i]) return false;
        }
    return true;
}

bool is_zero_map(const PuiseuxField& F, const ModuleMap& f) {
    for (size_t i = 0; i < f.matrix.rows; ++i)
        for (size_t j = 0; j < f.matrix.cols; ++j) {
            auto v = F.valuation(f.matrix.at(i, j));
            if (v && *v < f.target.gammas[i]) return false;
        }
    return true;
}

FPTorsionModule dual(const FPTorsionModule& m) {
    FPTorsionModule out = m;
    for (auto& fl : out.flags)
        fl = fl == DivisorFlag::open ? DivisorFlag::closed : DivisorFlag::open;
    // a dualized closed zero factor would be O/I_0; it cannot arise because
    // closed zero factors are never stored
    return out;
}

bool almost_zero(const FPTorsionModule& m) { return m.divisors().empty(); }

namespace {

// diag(t^gammas) presentation matrix
MatrixOverO presentation(const PuiseuxField& F, const FPTorsionModule& m) {
    MatrixOverO p = make_matrix(F, m.rank(), m.rank());
    for (size_t i = 0; i < m.rank(); ++i)
        p.at(i, i) = F.monomial(F.coeff_field().one(), m.gammas[i]);
    return p;
}

// [a | b] side by side
MatrixOverO augment(const PuiseuxField& F, const MatrixOverO& a, const MatrixOverO& b) {
    if (a.rows != b.rows) throw input_error("augment: row mismatch");
    MatrixOverO r = make_matrix(F, a.rows, a.cols + b.cols);
    for (size_t i = 0; i < a.rows; ++i) {
        for (size_t j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
        for (size_t j = 0; j < b.cols; ++j) r.at(i, a.cols + j) = b.at(i, j);
    }
    return r;
}

} // namespace

FPTorsionModule map_cokernel(const PuiseuxField& F, const ModuleMap& f) {
    if (f.target.rank() == 0) return FPTorsionModule{};
    MatrixOverO aug = augment(F, presentation(F, f.target), f.matrix);
    CokernelShape c = cokernel_divisors(F, aug);
    if (c.free_rank != 0)
        throw error("cokernel of a torsion-module map cannot have free rank");
    return module_from_divisors(c.divisors);
}

EldivSeq map_image_divisors(const PuiseuxField& F, const ModuleMap& f) {
    size_t k = f.target.rank();
    if (k == 0 || f.source.rank() == 0) return EldivSeq{};
    MatrixOverO p = presentation(F, f.target);
    // image = (span(F columns) + P O^k) / P O^k
    MatrixOverO outer = column_lattice_basis(F, augment(F, f.matrix, p));
    CokernelShape q = lattice_quotient(F, outer, p);
    if (q.free_rank != 0) throw error("image of a torsion map cannot have free rank");
    return q.divisors;
}

EldivSeq map_kernel_divisors(const PuiseuxField& F, const ModuleMap& f) {
    size_t ks = f.source.rank();
    if (ks == 0) return EldivSeq{};
    // {x : F x in P_tgt O} / P_src O
    MatrixOverO lat = f.target.rank() == 0
                          ? identity_matrix(F, ks)
                          : preimage_lattice(F, f.matrix, f.target.gammas);
    MatrixOverO psrc = presentation(F, f.source);
    CokernelShape q = lattice_quotient(F, lat, psrc);
    if (q.free_rank != 0) throw error("kernel of a torsion map cannot have free rank");
    return q.divisors;
}

bool approx_eq(const FPTorsionModule& m, const FPTorsionModule& n, const Rational& eps) {
    if (!(eps > Rational(0))) throw input_error("approx_eq needs eps > 0");
    return !(eps < linf_dist(m.divisors(), n.divisors()));
}

std::optional<WitnessPair> witness_maps(const PuiseuxField& F, const FPTorsionModule& m,
                                        const FPTorsionModule& n, const Rational& eps) {
    if (!approx_eq(m, n, eps)) return std::nullopt;
    size_t rm = m.rank(), rn = n.rank();
    MatrixOverO fmat = make_matrix(F, rn, rm); // f : M -> N
    MatrixOverO gmat = make_matrix(F, rm, rn); // g : N -> M
    const Fq one = F.coeff_field().one();
    for (size_t i = 0; i < std::min(rm, rn); ++i) {
        Rational gm = m.gammas[i], gn = n.gammas[i];
        Rational a = max(gn - gm, Rational(0)); // f_i = t^a is well-defined
        fmat.at(i, i) = F.monomial(one, a);
        gmat.at(i, i) = F.monomial(one, eps - a); // eps - a >= max(gm - gn, 0) by the metric bound
    }
    WitnessPair w{make_map(F, m, n, fmat), make_map(F, n, m, gmat)};
    return w;
}

ExactReport exact_sequence_check(const PuiseuxField& F, const ModuleMap& f,
                                 const ModuleMap& g) {
    if (f.target.rank() != g.source.rank() || f.target.gammas != g.source.gammas)
        throw input_error("exact_sequence_check: f and g do not share the middle module");
    ExactReport rep;
    rep.is_complex = is_zero_map(F, compose(F, g, f));
    if (!rep.is_complex) {
        rep.failure = "not-a-complex (g f != 0)";
        return rep;
    }
    rep.f_injective = map_kernel_divisors(F, f).empty();
    rep.g_surjective = map_cokernel(F, g).divisors().empty() ;

    // middle: ker(g) / im(f) inside the presentation lattice of M
    size_t k = f.target.rank();
    if (k == 0) {
        rep.middle_exact = true;
    } else {
        MatrixOverO pmid = presentation(F, f.target);
        MatrixOverO lker = g.target.rank() == 0
                               ? identity_matrix(F, k)
                               : preimage_lattice(F, g.matrix, g.target.gammas);
        MatrixOverO lim = f.source.rank() == 0
                              ? column_lattice_basis(F, pmid)
                              : column_lattice_basis(F, augment(F, f.matrix, pmid));
        CokernelShape h = lattice_quotient(F, lker, lim);
        rep.middle_homology = h.divisors;
        rep.middle_exact = h.divisors.empty() && h.free_rank == 0;
    }

    rep.lambda_mid = lambda(f.target.divisors());
    rep.lambda_sum = lambda(f.source.divisors()) + lambda(g.target.divisors());
    rep.lambda_additive = rep.lambda_mid == rep.lambda_sum;
    rep.majorization_ok =
        majorizes(indexwise_sum(f.source.divisors(), g.target.divisors()), f.target.divisors());

    rep.exact = rep.f_injective && rep.g_surjective && rep.middle_exact;
    if (!rep.exact) {
        if (!rep.f_injective) rep.failure = "f is not injective";
        else if (!rep.middle_exact) rep.failure = "not exact in the middle";
        else rep.failure = "g is not surjective";
    } else if (!rep.lambda_additive) {
        rep.failure = "length additivity violated";
    } else if (!rep.majorization_ok) {
        rep.failure = "majorization inequality violated";
    }
    return rep;
}

} // namespace almostperiods
