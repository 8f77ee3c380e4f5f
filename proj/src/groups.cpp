#include "cliffring/groups.hpp"

#include <bit>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "cliffring/subalgebra.hpp"

namespace cliffring {

namespace {

// Coordinates of a when it lies in M (grade 1), or in R ⊕ M (grade ≤ 1).
std::optional<Vec> vector_coords(const CliffordElement& a, bool with_scalar) {
    const auto& alg = a.algebra();
    for (uint32_t I = 0; I < alg.dim(); ++I) {
        int k = std::popcount(I);
        bool allowed = k == 1 || (with_scalar && k == 0);
        if (!allowed && !a.coeff(I).is_zero()) return std::nullopt;
    }
    Vec out;
    if (with_scalar) out.push_back(a.coeff(0));
    for (size_t i = 0; i < alg.rank(); ++i) out.push_back(a.coeff(uint32_t(1) << i));
    return out;
}

// Images of the basis of M (or R ⊕ M) under β ↦ left·β·right; nullopt
// when one falls outside.
std::optional<Matrix> conjugation_matrix(const CliffordElement& left, const CliffordElement& right, bool paravector,
                                         size_t* bad) {
    const auto& alg = left.algebra();
    std::vector<Vec> cols;
    size_t off = paravector ? 1 : 0;
    for (size_t j = 0; j < alg.rank() + off; ++j) {
        CliffordElement b = paravector && j == 0 ? alg.one() : alg.generator(j - off);
        auto c = vector_coords(left * b * right, paravector);
        if (!c) {
            if (bad) *bad = j;
            return std::nullopt;
        }
        cols.push_back(*c);
    }
    return Matrix::from_columns(alg.ring(), alg.rank() + off, cols);
}

std::string basis_name(size_t j, bool paravector) {
    if (paravector) return j == 0 ? "1" : "x" + std::to_string(j);
    return "x" + std::to_string(j + 1);
}

std::vector<std::pair<size_t, size_t>> index_pairs(size_t n, size_t cap) {
    std::vector<std::pair<size_t, size_t>> out;
    if (n == 0) return out;
    if (n * n <= cap) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) out.emplace_back(i, j);
        return out;
    }
    std::mt19937_64 rng(1);
    for (size_t k = 0; k < cap; ++k) out.emplace_back(rng() % n, rng() % n);
    return out;
}

constexpr size_t kPairCap = 20000;

std::vector<CliffordElement> all_elements(const AlgebraPtr& alg, uint64_t budget) {
    const Ring& r = alg->ring();
    if (!r.is_finite()) throw NotComputable("enumeration needs a finite ring");
    std::vector<CliffordElement> out;
    for (const Vec& v : all_vectors(r, alg->dim(), budget)) out.push_back(alg->from_vec(v));
    return out;
}

std::vector<CliffordElement> twisted_center_units(const AlgebraPtr& alg, uint64_t budget) {
    auto tz = twisted_center(alg);
    std::vector<Vec> gens;
    for (auto& g : tz.generators) gens.push_back(g.coeffs());
    std::vector<CliffordElement> out;
    for (const Vec& v : enumerate_span(alg->ring(), alg->dim(), gens, budget)) {
        CliffordElement a = alg->from_vec(v);
        if (invert(a)) out.push_back(a);
    }
    return out;
}

// Closed form of R^× ⊕ ⋁ ⋀^r M^⊥ for an orthogonal basis whose M^⊥ is
// spanned by the x_i with q_i = 0; even_only keeps r even.
std::set<CliffordElement> exterior_kernel(const AlgebraPtr& alg, bool even_only, uint64_t budget) {
    const auto& m = alg->module();
    uint32_t zmask = 0;
    for (size_t i = 0; i < m.rank(); ++i)
        if (m.qdiag()[i].is_zero()) zmask |= uint32_t(1) << i;
    std::vector<Vec> gens;
    for (uint32_t I = 1; I < alg->dim(); ++I) {
        if ((I & ~zmask) != 0) continue;
        if (even_only && std::popcount(I) % 2) continue;
        gens.push_back(alg->basis(I).coeffs());
    }
    std::vector<RingElement> units;
    for (const RingElement& a : alg->ring().elements())
        if (a.try_invert()) units.push_back(a);
    std::set<CliffordElement> out;
    for (const Vec& v : enumerate_span(alg->ring(), alg->dim(), gens, budget))
        for (const RingElement& a : units) out.insert(alg->scalar(a) + alg->from_vec(v));
    return out;
}

struct Generated {
    std::map<Matrix, RingElement> det;  // product of generator determinants along a word
    bool consistent = true;             // every word for the same map gives the same product
};

Generated generate_with_det(const std::vector<Matrix>& gens, const std::vector<RingElement>& dets, size_t rank,
                            const Ring& r, uint64_t budget) {
    Generated out;
    Matrix id = Matrix::identity(r, rank);
    out.det.emplace(id, r.one());
    std::deque<Matrix> queue{id};
    uint64_t steps = 0;
    while (!queue.empty()) {
        Matrix g = queue.front();
        queue.pop_front();
        RingElement dg = out.det.at(g);
        for (size_t k = 0; k < gens.size(); ++k) {
            if (++steps > budget) throw BudgetExceeded("subgroup generation exceeded budget");
            Matrix h = g * gens[k];
            RingElement dh = dg * dets[k];
            auto [it, fresh] = out.det.emplace(h, dh);
            if (fresh)
                queue.push_back(h);
            else if (it->second != dh)
                out.consistent = false;
        }
    }
    return out;
}

std::vector<Matrix> bijective_trivial_on_perp(const QuadraticModule& m, uint64_t budget) {
    std::vector<Matrix> out;
    for (const auto& phi : enumerate_orthogonal(m, Restrict::TrivialOnPerp, budget))
        if (phi.bijective) out.push_back(phi.mat);
    return out;
}

}  // namespace

std::string CliffordGroupElement::flavor() const {
    if (clifford && paravector) return "both";
    if (clifford) return "clifford";
    if (paravector) return "paravector";
    return "none";
}

std::optional<CliffordGroupElement> classify(const CliffordElement& alpha, std::string* why) {
    auto inv = invert(alpha);
    if (!inv) {
        if (why) *why = "not invertible";
        return std::nullopt;
    }
    CliffordGroupElement g;
    g.alpha = alpha;
    g.inverse = *inv;
    g.norm = norm(alpha);
    CliffordElement ap = grade_involution(alpha);
    CliffordElement ap_inv = grade_involution(*inv);
    std::string reasons;
    for (bool para : {false, true}) {
        size_t bad = 0;
        auto fwd = conjugation_matrix(alpha, ap_inv, para, &bad);
        if (!fwd) {
            reasons += (reasons.empty() ? "" : "; ") + std::string("α ") + basis_name(bad, para) + " α′⁻¹ ∉ " +
                       (para ? "R ⊕ M" : "M");
            continue;
        }
        auto back = conjugation_matrix(*inv, ap, para, &bad);
        if (!back) {
            reasons += (reasons.empty() ? "" : "; ") + std::string("α⁻¹ ") + basis_name(bad, para) + " α′ ∉ " +
                       (para ? "R ⊕ M" : "M");
            continue;
        }
        if (para) {
            g.paravector = true;
            g.pi_tilde = *fwd;
        } else {
            g.clifford = true;
            g.pi = *fwd;
        }
    }
    const auto& m = alpha.algebra().module();
    if (g.pi && (!is_orthogonal(m, *g.pi) || !acts_trivially_on_perp(m, *g.pi)))
        throw Error("twisted conjugation gave a non-orthogonal map on M");
    if (g.pi_tilde) {
        auto pm = paravector_extension(m).module;
        if (!is_orthogonal(pm, *g.pi_tilde) || !acts_trivially_on_perp(pm, *g.pi_tilde))
            throw Error("twisted conjugation gave a non-orthogonal map on R ⊕ M");
    }
    if (why) *why = reasons;
    return g;
}

std::optional<CliffordGroupElement> in_clifford_group(const CliffordElement& alpha, std::string* why) {
    auto g = classify(alpha, why);
    if (g && !g->clifford) return std::nullopt;
    return g;
}

std::optional<CliffordGroupElement> in_paravector_group(const CliffordElement& alpha, std::string* why) {
    auto g = classify(alpha, why);
    if (g && !g->paravector) return std::nullopt;
    return g;
}

const Matrix& pi(const CliffordGroupElement& g) {
    if (!g.pi) throw PreconditionFailed("element is not in the Clifford group");
    return *g.pi;
}

const Matrix& pi_tilde(const CliffordGroupElement& g) {
    if (!g.pi_tilde) throw PreconditionFailed("element is not in the paravector Clifford group");
    return *g.pi_tilde;
}

bool in_twisted_center(const CliffordElement& a) {
    const auto& alg = a.algebra();
    CliffordElement ap = grade_involution(a);
    for (size_t i = 0; i < alg.rank(); ++i) {
        CliffordElement x = alg.generator(i);
        if (a * x != x * ap) return false;
    }
    return true;
}

CliffordGroupElement lift_reflection(const AlgebraPtr& alg, const RingElement& e, const Vec& x) {
    const auto& m = alg->module();
    ReflectionData d = reflection_data(m, e, x);
    RingElement ce = m.ring().one() - e;
    CliffordElement a = alg->scalar(ce) + alg->from_vector(x);
    CliffordElement ainv = grade_involution(a).scaled(ce - d.t);
    if (a * ainv != alg->one()) throw Error("reflection lift inverse formula failed");
    auto g = classify(a);
    if (!g || !g->clifford) throw Error("reflection lift is not in the Clifford group");
    return *g;
}

CliffordGroupElement lift_euler(const AlgebraPtr& alg, const Vec& u, const Vec& x) {
    euler_data(alg->module(), u, x);
    CliffordElement U = alg->from_vector(u), X = alg->from_vector(x);
    CliffordElement b = alg->one() - X * U;
    if (b * (alg->one() - U * X) != alg->one()) throw Error("Euler lift inverse formula failed");
    auto g = classify(b);
    if (!g || !g->clifford) throw Error("Euler lift is not in the Clifford group");
    return *g;
}

CliffordGroupElement lift_paravector_euler(const AlgebraPtr& alg, const Vec& upsilon, const Vec& xi) {
    euler_data(paravector_extension(alg->module()).module, upsilon, xi);
    CliffordElement Y = alg->from_paravector(upsilon), Xi = alg->from_paravector(xi);
    CliffordElement b = alg->one() + Xi * grade_involution(Y);
    if (b * (alg->one() + Y * grade_involution(Xi)) != alg->one()) throw Error("paravector Euler lift inverse failed");
    auto g = classify(b);
    if (!g || !g->paravector) throw Error("paravector Euler lift is not in the paravector group");
    return *g;
}

CliffordGroupElement lift_paravector_reflection(const AlgebraPtr& alg, const RingElement& e, const Vec& xi) {
    reflection_data(paravector_extension(alg->module()).module, e, xi);
    CliffordElement a = alg->scalar(alg->ring().one() - e) + alg->from_paravector(xi);
    auto g = classify(a);
    if (!g || !g->paravector) throw Error("paravector reflection lift is not in the paravector group");
    return *g;
}

Matrix paravector_re(const QuadraticModule& m, const RingElement& e) {
    auto pm = paravector_extension(m).module;
    Vec v = zero_vec(m.ring(), m.rank() + 1);
    v[0] = e;
    return e_reflection(pm, reflection_data(pm, e, v));
}

CheckList involution_action(const CliffordGroupElement& g) {
    CheckList rep;
    const auto& m = g.alpha.algebra().module();
    auto add = [&](const std::string& name, bool ok) { rep.checks.emplace_back(name, ok); };
    auto ga = classify(grade_involution(g.alpha));
    auto ta = classify(transpose(g.alpha));
    auto ca = classify(clifford_involution(g.alpha));
    bool norm_ok = in_twisted_center(g.norm) && invert(g.norm).has_value();
    if (g.clifford) {
        const Matrix& p = *g.pi;
        auto pinv = inverse(p);
        add("alpha' in Gamma", ga && ga->clifford);
        add("alpha* in Gamma", ta && ta->clifford);
        add("alpha-bar in Gamma", ca && ca->clifford);
        add("pi(alpha') = pi(alpha)", ga && ga->clifford && *ga->pi == p);
        add("pi(alpha*) = pi(alpha)^-1", pinv && ta && ta->clifford && *ta->pi == *pinv);
        add("pi(alpha-bar) = pi(alpha)^-1", pinv && ca && ca->clifford && *ca->pi == *pinv);
        add("N(alpha) in twisted-center units", norm_ok);
    }
    if (g.paravector) {
        const Matrix& p = *g.pi_tilde;
        auto pinv = inverse(p);
        Matrix r1 = paravector_re(m, m.ring().one());
        add("alpha' in Gamma~", ga && ga->paravector);
        add("alpha* in Gamma~", ta && ta->paravector);
        add("alpha-bar in Gamma~", ca && ca->paravector);
        add("pi~(alpha') = r1 pi~(alpha) r1", ga && ga->paravector && *ga->pi_tilde == r1 * p * r1);
        add("pi~(alpha-bar) = pi~(alpha)^-1", pinv && ca && ca->paravector && *ca->pi_tilde == *pinv);
        add("pi~(alpha*) = r1 pi~(alpha)^-1 r1", pinv && ta && ta->paravector && *ta->pi_tilde == r1 * *pinv * r1);
        add("N(alpha) in twisted-center units (paravector)", norm_ok);
        add("2 N(alpha)_- = 0", g.norm.odd_part().scaled(m.ring().from_int(2)).is_zero());
    }
    if (!g.clifford && !g.paravector) {
        rep.available = false;
        rep.reason = "not a member of either group";
    }
    return rep;
}

std::vector<RingElement> homogeneity_witnesses(const CliffordElement& alpha) {
    std::vector<RingElement> out;
    const Ring& r = alpha.ring();
    CliffordElement ev = alpha.even_part(), od = alpha.odd_part();
    for (const RingElement& e : r.idempotents())
        if (od.scaled(r.one() - e).is_zero() && ev.scaled(e).is_zero()) out.push_back(e);
    return out;
}

std::optional<RingElement> homogeneity_degree(const CliffordElement& alpha) {
    auto w = homogeneity_witnesses(alpha);
    if (w.empty()) return std::nullopt;
    return w.front();
}

CheckList ehom_check(const CliffordElement& alpha) {
    CheckList rep;
    auto w = homogeneity_witnesses(alpha);
    if (w.empty()) {
        rep.available = false;
        rep.reason = "not homogeneous";
        return rep;
    }
    auto g = classify(alpha);
    if (!g) {
        rep.available = false;
        rep.reason = "not invertible";
        return rep;
    }
    rep.checks.emplace_back("in Gamma iff in Gamma~", g->clifford == g->paravector);
    if (g->clifford && g->paravector) {
        const Ring& r = alpha.ring();
        for (const RingElement& e : w) {
            size_t n = alpha.rank();
            Matrix expect(r, n + 1, n + 1);
            expect.at(0, 0) = idem_to_mu2(e);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) expect.at(i + 1, j + 1) = g->pi->at(i, j);
            rep.checks.emplace_back("pi~ = (1-2e) Id_R + pi for e = " + e.to_string(), *g->pi_tilde == expect);
        }
    }
    return rep;
}

std::vector<CliffordGroupElement> enumerate_group(const AlgebraPtr& alg, GroupFlavor flavor, uint64_t budget) {
    std::vector<CliffordGroupElement> out;
    for (const CliffordElement& a : all_elements(alg, budget)) {
        auto g = classify(a);
        if (!g) continue;
        if (flavor == GroupFlavor::Clifford ? g->clifford : g->paravector) out.push_back(std::move(*g));
    }
    return out;
}

std::vector<Matrix> generated_subgroup(const std::vector<Matrix>& gens, size_t rank, const Ring& r, uint64_t budget) {
    std::vector<RingElement> ones(gens.size(), r.one());
    auto g = generate_with_det(gens, ones, rank, r, budget);
    std::vector<Matrix> out;
    for (auto& [mat, d] : g.det) out.push_back(mat);
    return out;
}

std::vector<Matrix> reflection_euler_generators(const QuadraticModule& m, uint64_t budget) {
    std::set<Matrix> out;
    for (const RingElement& e : m.ring().idempotents())
        for (const auto& d : admissible_reflections(m, e, budget)) out.insert(e_reflection(m, d));
    auto vs = all_vectors(m.ring(), m.rank(), budget);
    if (vs.size() * vs.size() > budget) throw BudgetExceeded("Euler generator scan exceeds budget");
    for (const Vec& u : vs)
        for (const Vec& x : vs)
            if (auto d = try_euler_data(m, u, x)) out.insert(euler_transformation(m, *d));
    return {out.begin(), out.end()};
}

bool ses_hypotheses(const QuadraticModule& m, std::string* why) {
    const Ring& r = m.ring();
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (!m.is_orthogonal_basis()) return fail("basis is not orthogonal");
    if (r.is_zero_divisor(r.from_int(2))) return fail("2 is a zero-divisor");
    for (size_t i = 0; i < m.rank(); ++i)
        if (!m.qdiag()[i].is_zero() && r.is_zero_divisor(m.qdiag()[i]))
            return fail("q(x" + std::to_string(i + 1) + ") is a nonzero zero-divisor");
    return true;
}

SesReport verify_sesgamma(const AlgebraPtr& alg, uint64_t budget) {
    SesReport rep;
    const auto& m = alg->module();
    const Ring& r = m.ring();
    if (!r.is_finite()) {
        rep.available = false;
        rep.reason = "ring is not finite";
        return rep;
    }
    std::string why;
    rep.hypotheses_certified = ses_hypotheses(m, &why);
    if (!rep.hypotheses_certified) rep.reason = "hypotheses not certified: " + why;
    auto add = [&](const std::string& name, bool ok) { rep.checks.emplace_back(name, ok); };

    auto gamma = enumerate_group(alg, GroupFlavor::Clifford, budget);
    rep.group_size = gamma.size();
    std::vector<Matrix> target = bijective_trivial_on_perp(m, budget);
    std::set<Matrix> target_set(target.begin(), target.end());
    rep.target_size = target.size();

    std::set<Matrix> image;
    std::set<CliffordElement> kernel;
    bool lands = true, invol = true;
    for (const auto& g : gamma) {
        image.insert(*g.pi);
        lands = lands && target_set.count(*g.pi);
        if (g.pi->is_identity()) kernel.insert(g.alpha);
        invol = invol && involution_action(g).all_passed();
    }
    rep.image_size = image.size();
    rep.kernel_size = kernel.size();
    bool hom = true;
    for (auto [i, j] : index_pairs(gamma.size(), kPairCap)) {
        auto p = classify(gamma[i].alpha * gamma[j].alpha);
        hom = hom && p && p->clifford && *p->pi == *gamma[i].pi * *gamma[j].pi;
    }
    auto tz = twisted_center_units(alg, budget);
    std::set<CliffordElement> tz_set(tz.begin(), tz.end());
    auto generated = generated_subgroup(reflection_euler_generators(m, budget), m.rank(), r, budget);
    bool contains_generated = true;
    for (const Matrix& g : generated) contains_generated = contains_generated && image.count(g);
    rep.generation_holds = std::set<Matrix>(generated.begin(), generated.end()) == target_set;

    add("pi lands in O_{M^perp}", lands);
    add("pi is a homomorphism", hom);
    add("ker pi = units of the twisted center", kernel == tz_set);
    add("image of pi contains the reflection/Euler subgroup", contains_generated);
    add("involutions act as stated", invol);
    if (rep.hypotheses_certified) {
        add("ker pi = R^x + positive exterior powers of M^perp", kernel == exterior_kernel(alg, false, budget));
        if (rep.generation_holds) add("pi is onto O_{M^perp}", image == target_set);
    }
    return rep;
}

SesReport verify_sespara(const AlgebraPtr& alg, uint64_t budget) {
    SesReport rep;
    const auto& m = alg->module();
    const Ring& r = m.ring();
    if (!r.is_finite()) {
        rep.available = false;
        rep.reason = "ring is not finite";
        return rep;
    }
    std::string why;
    rep.hypotheses_certified = ses_hypotheses(m, &why);
    if (!rep.hypotheses_certified) rep.reason = "hypotheses not certified: " + why;
    auto add = [&](const std::string& name, bool ok) { rep.checks.emplace_back(name, ok); };
    QuadraticModule pm = paravector_extension(m).module;

    auto gamma = enumerate_group(alg, GroupFlavor::Paravector, budget);
    rep.group_size = gamma.size();
    std::vector<Matrix> ambient = bijective_trivial_on_perp(pm, budget);
    std::set<Matrix> ambient_set(ambient.begin(), ambient.end());

    std::set<Matrix> image;
    std::set<CliffordElement> kernel;
    bool lands = true, invol = true;
    for (const auto& g : gamma) {
        image.insert(*g.pi_tilde);
        lands = lands && ambient_set.count(*g.pi_tilde);
        if (g.pi_tilde->is_identity()) kernel.insert(g.alpha);
        invol = invol && involution_action(g).all_passed();
    }
    rep.image_size = image.size();
    rep.kernel_size = kernel.size();
    bool hom = true;
    for (auto [i, j] : index_pairs(gamma.size(), kPairCap)) {
        auto p = classify(gamma[i].alpha * gamma[j].alpha);
        hom = hom && p && p->paravector && *p->pi_tilde == *gamma[i].pi_tilde * *gamma[j].pi_tilde;
    }
    std::set<CliffordElement> expected_kernel;
    for (const auto& a : twisted_center_units(alg, budget))
        if (a.odd_part().scaled(r.from_int(2)).is_zero()) expected_kernel.insert(a);

    // Generators with their determinants: 1 − 2e for e-reflections, 1 for Euler.
    std::vector<Matrix> gens;
    std::vector<RingElement> dets;
    std::set<Matrix> so_ref_euler;
    for (const RingElement& e : r.idempotents()) {
        Matrix re = paravector_re(m, e);
        for (const auto& d : admissible_reflections(pm, e, budget)) {
            Matrix rx = e_reflection(pm, d);
            gens.push_back(rx);
            dets.push_back(idem_to_mu2(e));
            so_ref_euler.insert(rx * re);
        }
    }
    auto vs = all_vectors(r, pm.rank(), budget);
    if (vs.size() * vs.size() > budget) throw BudgetExceeded("Euler generator scan exceeds budget");
    for (const Vec& u : vs)
        for (const Vec& x : vs)
            if (auto d = try_euler_data(pm, u, x)) {
                Matrix E = euler_transformation(pm, *d);
                gens.push_back(E);
                dets.push_back(r.one());
                so_ref_euler.insert(E);
            }
    Generated gen = generate_with_det(gens, dets, pm.rank(), r, budget);
    std::set<Matrix> generated;
    for (auto& [mat, d] : gen.det) generated.insert(mat);
    rep.generation_holds = generated == ambient_set;
    bool contains = true;
    for (const Matrix& g : so_ref_euler) contains = contains && image.count(g);

    add("pi~ lands in O_{M_R^perp}", lands);
    add("pi~ is a homomorphism", hom);
    add("ker pi~ = twisted-center units with 2 alpha_- = 0", kernel == expected_kernel);
    add("image of pi~ contains r_xi r_e and the Euler transformations", contains);
    add("involutions act as stated", invol);

    std::set<Matrix> so;
    for (const Matrix& g : ambient)
        if (determinant(g).is_one()) so.insert(g);
    rep.target_size = so.size();
    if (rep.hypotheses_certified) {
        add("ker pi~ = R^x + even exterior powers of M^perp", kernel == exterior_kernel(alg, true, budget));
        bool notsurj = true;
        for (const RingElement& e : r.idempotents())
            if (!e.is_zero()) notsurj = notsurj && !image.count(paravector_re(m, e));
        add("r_e is not in the image of pi~ for e != 0", notsurj);
        if (rep.generation_holds) {
            bool det_ok = gen.consistent;
            for (auto& [mat, d] : gen.det) det_ok = det_ok && determinant(mat) == d && in_mu2(d);
            add("det is well defined on O_{M_R^perp} via generating words", det_ok);
            add("image of pi~ = SO_{M_R^perp}", image == so);
        }
    }
    return rep;
}

VahlenResult vahlen_filter(const std::vector<CliffordGroupElement>& members) {
    VahlenResult out;
    auto unit_scalar = [](const CliffordElement& n) { return n.is_scalar() && n.coeff(0).try_invert().has_value(); };
    for (const auto& g : members)
        if (unit_scalar(g.norm)) out.kept.push_back(g);
    out.closed = true;
    for (auto [i, j] : index_pairs(out.kept.size(), kPairCap))
        out.closed = out.closed && unit_scalar(norm(out.kept[i].alpha * out.kept[j].alpha));
    return out;
}

EmptyIntReport conjecture_emptyint_search(const AlgebraPtr& alg, uint64_t budget) {
    const Ring& r = alg->ring();
    if (r.from_int(2).is_zero()) throw PreconditionFailed("2 = 0 in the ring");
    if (!r.is_finite()) throw NotComputable("search needs a finite ring");
    EmptyIntReport rep;
    for (const auto& a : twisted_center_units(alg, budget)) {
        ++rep.searched;
        if (a.even_part().scaled(r.from_int(2)).is_zero()) rep.counterexamples.push_back(a);
    }
    return rep;
}

MultiplierReport multiplier_search(const AlgebraPtr& alg, uint64_t budget) {
    const Ring& r = alg->ring();
    MultiplierReport rep;
    std::vector<RingElement> mu2, image;
    for (const RingElement& d : r.elements())
        if (in_mu2(d)) mu2.push_back(d);
    for (const RingElement& e : r.idempotents()) image.push_back(idem_to_mu2(e));
    for (const auto& g : enumerate_group(alg, GroupFlavor::Paravector, budget)) {
        ++rep.searched;
        CliffordElement ap = grade_involution(g.alpha);
        for (const RingElement& d : mu2) {
            if (ap != g.alpha.scaled(d)) continue;
            if (std::find(image.begin(), image.end(), d) == image.end()) rep.hits.emplace_back(g.alpha, d);
            break;
        }
    }
    return rep;
}

CheckList gammadecom_check(const AlgebraPtr& alg, uint64_t budget) {
    CheckList rep;
    const auto& m = alg->module();
    const Ring& r = m.ring();
    Subalgebra scalars{alg, SubalgebraKind::Other, {alg->one()}};
    if (!same_submodule(twisted_center(alg), scalars)) {
        rep.available = false;
        rep.reason = "twisted center is larger than R";
        return rep;
    }
    auto gamma = enumerate_group(alg, GroupFlavor::Clifford, budget);
    std::set<RingElement> idem_mq{r.zero()};
    for (const RingElement& e : r.idempotents())
        if (!admissible_reflections(m, e, budget).empty()) idem_mq.insert(e);
    for (bool grew = true; grew;) {
        grew = false;
        for (const RingElement& a : std::vector<RingElement>(idem_mq.begin(), idem_mq.end()))
            for (const RingElement& b : std::vector<RingElement>(idem_mq.begin(), idem_mq.end()))
                grew = idem_mq.insert(idem_add(a, b)).second || grew;
    }
    bool homogeneous = true, det_ok = true, even_ok = true, image_ok = true;
    std::set<RingElement> degrees;
    std::vector<std::vector<RingElement>> wit;
    for (const auto& g : gamma) {
        auto w = homogeneity_witnesses(g.alpha);
        wit.push_back(w);
        if (w.empty()) {
            homogeneous = false;
            continue;
        }
        RingElement d = determinant(*g.pi);
        for (const RingElement& e : w) {
            det_ok = det_ok && d == idem_to_mu2(e);
            degrees.insert(e);
            image_ok = image_ok && idem_mq.count(e);
        }
        bool deg0 = std::find(w.begin(), w.end(), r.zero()) != w.end();
        even_ok = even_ok && deg0 == g.alpha.odd_part().is_zero();
    }
    bool hom = homogeneous;
    for (auto [i, j] : index_pairs(gamma.size(), kPairCap)) {
        if (!hom) break;
        auto w = homogeneity_witnesses(gamma[i].alpha * gamma[j].alpha);
        RingElement s = idem_add(wit[i].front(), wit[j].front());
        hom = std::find(w.begin(), w.end(), s) != w.end();
    }
    rep.checks.emplace_back("every member is homogeneous", homogeneous);
    rep.checks.emplace_back("degree is a homomorphism to (Idem(R), +)", hom);
    rep.checks.emplace_back("degree 0 is Gamma cap C_+", even_ok);
    rep.checks.emplace_back("det pi(alpha) = 1 - 2e", det_ok);
    rep.checks.emplace_back("degrees lie in Idem(M,q)", image_ok);
    rep.checks.emplace_back("every element of Idem(M,q) is a degree", degrees == idem_mq);
    return rep;
}

}  // namespace cliffring
