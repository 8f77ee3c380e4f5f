#include "cliffring/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cliffring/clifford.hpp"
#include "cliffring/groups.hpp"
#include "cliffring/orthogonal.hpp"
#include "cliffring/subalgebra.hpp"

namespace cliffring {

using nlohmann::json;

QuadraticModule Instance::build() const {
    const Ring& r = Ring::parse(ring);
    if (!gram) return QuadraticModule::diagonal(r, qdiag);
    Vec q;
    for (auto v : qdiag) q.push_back(r.from_int(v));
    if (gram->size() != qdiag.size()) throw Error("rank-mismatch: gram has " + std::to_string(gram->size()) + " rows");
    return QuadraticModule(r, q, Matrix::from_ints(r, *gram));
}

std::string Instance::label() const {
    std::ostringstream os;
    os << ring << " q=(";
    for (size_t i = 0; i < qdiag.size(); ++i) os << (i ? "," : "") << qdiag[i];
    os << ")";
    if (gram) {
        os << " gram=[";
        for (size_t i = 0; i < gram->size(); ++i) {
            os << (i ? ";" : "");
            for (size_t j = 0; j < (*gram)[i].size(); ++j) os << (j ? "," : "") << (*gram)[i][j];
        }
        os << "]";
    }
    return os.str();
}

json Instance::to_json() const {
    json j{{"ring", ring}, {"rank", qdiag.size()}, {"qdiag", qdiag}};
    if (gram) j["gram"] = *gram;
    return j;
}

Instance Instance::from_json(const json& j) {
    Instance in;
    in.ring = j.at("ring").get<std::string>();
    in.qdiag = j.at("qdiag").get<std::vector<int64_t>>();
    if (j.contains("gram")) in.gram = j.at("gram").get<std::vector<std::vector<int64_t>>>();
    return in;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Skipped: return "skipped";
        case Verdict::Report: return "report";
    }
    return "?";
}

json CheckReport::to_json(bool with_time) const {
    json checks_j = json::array();
    for (const auto& [name, ok] : checks) checks_j.push_back({{"name", name}, {"ok", ok}});
    json j{{"id", id},
           {"instance", instance.to_json()},
           {"expected", must_pass ? "must-pass" : "report-only"},
           {"verdict", cliffring::to_string(verdict)},
           {"reason", reason},
           {"checks", checks_j},
           {"witness", witness}};
    if (with_time) j["wall_ms"] = wall_ms;
    return j;
}

namespace {

struct Ctx {
    const CheckSpec& spec;
    QuadraticModule m;
    AlgebraPtr alg;
    mutable std::mt19937_64 rng;
};

struct Outcome {
    std::vector<std::pair<std::string, bool>> checks;
    std::optional<std::string> skip;
    json witness = json::object();

    void add(const std::string& name, bool ok) { checks.emplace_back(name, ok); }
    // Repeated sub-checks fold into one entry with a first failing witness.
    void fold(const std::string& name, bool ok, const std::function<json()>& detail = {}) {
        auto it = std::find_if(checks.begin(), checks.end(), [&](const auto& c) { return c.first == name; });
        if (it == checks.end()) {
            checks.emplace_back(name, ok);
            it = checks.end() - 1;
        } else {
            it->second = it->second && ok;
        }
        if (!ok && detail && !witness.contains("counterexample")) witness["counterexample"] = {{"check", name}, {"detail", detail()}};
    }
};

Outcome skipped(std::string why) {
    Outcome o;
    o.skip = std::move(why);
    return o;
}

json vec_json(const Vec& v) {
    json out = json::array();
    for (const auto& a : v) out.push_back(a.to_string());
    return out;
}

json mat_json(const Matrix& A) { return A.to_strings(); }

std::vector<Vec> identity_columns(const Ring& r, size_t n) {
    std::vector<Vec> out;
    for (size_t i = 0; i < n; ++i) out.push_back(unit_vec(r, n, i));
    return out;
}

bool two_is_zero(const Ring& r) { return r.from_int(2).is_zero(); }

bool is_prime_field(const Ring& r) {
    if (r.descriptor().kind != RingDescriptor::Kind::IntegersMod) return false;
    int64_t p = r.leaf_moduli().at(0);
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

RingElement random_element(const Ring& r, std::mt19937_64& rng) {
    if (r.is_finite()) return r.element_at(rng() % r.size());
    std::vector<int64_t> c(r.width());
    for (auto& x : c) x = int64_t(rng() % 7) - 3;
    return r.from_coords(c);
}

Vec random_vec(const Ring& r, size_t n, std::mt19937_64& rng) {
    Vec v;
    for (size_t i = 0; i < n; ++i) v.push_back(random_element(r, rng));
    return v;
}

// |R|^n when finite and at most `cap`, else 0.
uint64_t small_power(const Ring& r, size_t n, uint64_t cap) {
    if (!r.is_finite()) return 0;
    uint64_t s = r.size(), total = 1;
    for (size_t i = 0; i < n; ++i) {
        if (total > cap / s) return 0;
        total *= s;
    }
    return total;
}

// All of R^n when it has at most `cap` vectors, else `count` seeded samples;
// over ℤ-like rings the box [-2,2]^n when small.
std::vector<Vec> vectors_or_sample(const Ring& r, size_t n, uint64_t cap, size_t count, std::mt19937_64& rng) {
    if (small_power(r, n, cap)) return all_vectors(r, n);
    std::vector<Vec> out;
    for (size_t i = 0; i < count; ++i) out.push_back(random_vec(r, n, rng));
    return out;
}

std::vector<Vec> box_vectors(const Ring& r, size_t n, int64_t radius) {
    std::vector<Vec> out{Vec{}};
    for (size_t i = 0; i < n; ++i) {
        std::vector<Vec> next;
        for (const Vec& v : out)
            for (int64_t k = -radius; k <= radius; ++k) {
                Vec w = v;
                w.push_back(r.from_int(k));
                next.push_back(w);
            }
        out = std::move(next);
    }
    return out;
}

// Module vectors that are exhaustive over small finite rings and a bounded
// box otherwise.
std::vector<Vec> test_vectors(const Ring& r, size_t n, uint64_t cap) {
    if (small_power(r, n, cap)) return all_vectors(r, n);
    if (!r.is_finite()) return box_vectors(r, n, 2);
    throw BudgetExceeded("R^" + std::to_string(n) + " over " + r.to_string() + " exceeds " + std::to_string(cap));
}

std::vector<CliffordElement> elements_or_sample(const Ctx& c, uint64_t cap, size_t count) {
    std::vector<CliffordElement> out;
    for (const Vec& v : vectors_or_sample(c.alg->ring(), c.alg->dim(), cap, count, c.rng)) out.push_back(c.alg->from_vec(v));
    return out;
}

std::vector<CliffordElement> all_elements(const Ctx& c) {
    if (!c.alg->ring().is_finite()) throw NotComputable("C over an infinite ring cannot be enumerated");
    std::vector<CliffordElement> out;
    for (const Vec& v : all_vectors(c.alg->ring(), c.alg->dim(), c.spec.budget)) out.push_back(c.alg->from_vec(v));
    return out;
}

std::vector<RingElement> idempotents_of(const Ring& r) { return r.idempotents(); }

// Reflection data over all idempotents; over infinite rings from the box.
std::vector<ReflectionData> reflections(const QuadraticModule& m, uint64_t cap) {
    std::vector<ReflectionData> out;
    const Ring& r = m.ring();
    if (r.is_finite()) {
        for (const RingElement& e : r.idempotents())
            for (auto& d : admissible_reflections(m, e, cap)) out.push_back(d);
        return out;
    }
    for (const RingElement& e : r.idempotents())
        for (const Vec& x : box_vectors(r, m.rank(), 2))
            if (auto d = try_reflection_data(m, e, scale(e, x))) out.push_back(*d);
    return out;
}

// Certified Euler pairs: exhaustive over small finite rings, otherwise
// `count` seeded pairs with u drawn from M_q^⊥ so that certification holds.
std::vector<EulerData> euler_pairs(const Ctx& c, const QuadraticModule& m, uint64_t cap, size_t count) {
    const Ring& r = m.ring();
    size_t n = m.rank();
    std::vector<EulerData> out;
    if (uint64_t total = small_power(r, 2 * n, cap)) {
        (void)total;
        auto vs = all_vectors(r, n);
        for (const Vec& u : vs)
            for (const Vec& x : vs)
                if (auto d = try_euler_data(m, u, x)) out.push_back(*d);
        return out;
    }
    auto kd = kernel_perp(m);
    for (size_t k = 0; k < count; ++k) {
        Vec u = zero_vec(r, n);
        for (const Vec& g : kd.qperp) u = add(u, scale(random_element(r, c.rng), g));
        Vec x = random_vec(r, n, c.rng);
        if (auto d = try_euler_data(m, u, x)) out.push_back(*d);
    }
    return out;
}

// Matrix of ξ ↦ αξα′⁻¹ when it maps M (resp. R ⊕ M) into itself.
std::optional<Matrix> one_sided_matrix(const CliffordElement& a, const CliffordElement& prime_inv, bool paravector) {
    const auto& alg = a.algebra();
    size_t n = alg.rank(), off = paravector ? 1 : 0;
    std::vector<Vec> cols;
    for (size_t j = 0; j < n + off; ++j) {
        CliffordElement b = paravector && j == 0 ? alg.one() : alg.generator(j - off);
        CliffordElement img = a * b * prime_inv;
        Vec col;
        for (uint32_t mask = 0; mask < alg.dim(); ++mask) {
            bool allowed = std::popcount(mask) == 1 || (paravector && mask == 0);
            if (!allowed && !img.coeff(mask).is_zero()) return std::nullopt;
        }
        if (paravector) col.push_back(img.coeff(0));
        for (size_t i = 0; i < n; ++i) col.push_back(img.coeff(uint32_t(1) << i));
        cols.push_back(col);
    }
    return Matrix::from_columns(alg.ring(), n + off, cols);
}

Vec element_vec(const CliffordElement& a) { return a.coeffs(); }

std::vector<Vec> element_vecs(const std::vector<CliffordElement>& gens) {
    std::vector<Vec> out;
    for (auto& g : gens) out.push_back(element_vec(g));
    return out;
}

std::vector<CliffordElement> basis_elements(const AlgebraPtr& alg, bool even_only) {
    std::vector<CliffordElement> out;
    for (uint32_t mask = 0; mask < alg->dim(); ++mask)
        if (!even_only || std::popcount(mask) % 2 == 0) out.push_back(alg->basis(mask));
    return out;
}

Subalgebra full_algebra(const AlgebraPtr& alg, bool even_only) {
    return Subalgebra{alg, SubalgebraKind::Other, basis_elements(alg, even_only)};
}

bool unit_scalar(const CliffordElement& a) { return a.is_scalar() && a.coeff(0).try_invert().has_value(); }

template <class T>
std::vector<std::pair<const T*, const T*>> pairs_of(const std::vector<T>& xs, size_t cap, std::mt19937_64& rng) {
    std::vector<std::pair<const T*, const T*>> out;
    if (xs.empty()) return out;
    if (xs.size() * xs.size() <= cap) {
        for (auto& a : xs)
            for (auto& b : xs) out.emplace_back(&a, &b);
        return out;
    }
    for (size_t k = 0; k < cap; ++k) out.emplace_back(&xs[rng() % xs.size()], &xs[rng() % xs.size()]);
    return out;
}

// ---------------------------------------------------------------- section 1

Outcome check_fog2(const Ctx& c) {
    const auto& m = c.m;
    const Ring& r = m.ring();
    if (!m.is_orthogonal_basis()) return skipped("basis is not orthogonal");
    if (!r.is_finite()) return skipped("M_q^perp membership needs a finite ring");
    auto kd = kernel_perp(m);
    Outcome o;
    for (const Vec& v : test_vectors(r, m.rank(), c.spec.budget)) {
        bool pred = true;
        for (size_t i = 0; i < m.rank(); ++i) pred = pred && (v[i] * m.qdiag()[i]).scaled(2).is_zero();
        bool qpred = pred && m.eval_q(v).is_zero();
        o.fold("v in M^perp iff 2 a_i q_i = 0", in_perp(m, v) == pred && in_span(r, m.rank(), kd.perp, v) == pred,
               [&] { return vec_json(v); });
        o.fold("v in M_q^perp iff additionally q(v) = 0", in_span(r, m.rank(), kd.qperp, v) == qpred,
               [&] { return vec_json(v); });
    }
    if (two_is_zero(r)) o.add("M^perp = M over an F2-algebra", kd.perp.size() >= m.rank() &&
                                                                   same_span(r, m.rank(), kd.perp, identity_columns(r, m.rank())));
    return o;
}

Outcome check_annby2(const Ctx& c) {
    const auto& alg = c.alg;
    const Ring& r = alg->ring();
    auto gens = element_vecs(fixed_by_grade(*alg));
    Outcome o;
    for (const auto& g : fixed_by_grade(*alg)) o.fold("generators satisfy a' = a", grade_involution(g) == g);
    for (const CliffordElement& a : elements_or_sample(c, 50'000, 300)) {
        bool fixed = grade_involution(a) == a;
        o.fold("a' = a iff a in C_+ + C_-[2]", fixed == in_span(r, alg->dim(), gens, element_vec(a)),
               [&] { return a.to_string(); });
    }
    auto even = element_vecs(basis_elements(alg, true));
    o.add("fixed module = C_+ iff 2 is not a zero-divisor",
          same_span(r, alg->dim(), gens, even) == !r.is_zero_divisor(r.from_int(2)));
    return o;
}

Outcome check_signaniso(const Ctx& c) {
    const auto& alg = c.alg;
    if (!c.m.is_orthogonal_basis()) return skipped("basis is not orthogonal");
    Outcome o;
    for (uint32_t I = 0; I < alg->dim(); ++I)
        for (size_t i = 0; i < alg->rank(); ++i) {
            RingElement b = sign_constant(*alg, I, i);
            o.fold("x_I x_i = b(I,i) x_{I xor i}", alg->basis(I) * alg->generator(i) == alg->basis(I ^ (1u << i)).scaled(b),
                   [&] { return json{{"I", I}, {"i", i}}; });
        }
    for (const CliffordElement& a : elements_or_sample(c, 5'000, 100))
        for (size_t i = 0; i < alg->rank(); ++i) {
            o.fold("fast right product = product", mul_generator_fast(a, i) == a * alg->generator(i),
                   [&] { return a.to_string(); });
            o.fold("fast left product = product", mul_generator_fast_left(i, a) == alg->generator(i) * a,
                   [&] { return a.to_string(); });
        }
    return o;
}

Outcome check_zcalg(const Ctx& c) {
    const auto& alg = c.alg;
    Subalgebra z = center(alg), ze = even_center(alg), ce = centralizer_even(alg), tz = twisted_center(alg);
    Outcome o;
    o.add("Z(C) in C_C(C_+)", ce.contains_all(z));
    o.add("twisted center in C_C(C_+)", ce.contains_all(tz));
    o.add("Z(C_+) = C_C(C_+)_+", same_submodule(ze, even_part(ce)));
    o.add("Z(C)_+ = twisted center_+", same_submodule(even_part(z), even_part(tz)));
    for (const Subalgebra* s : {&z, &ze, &ce, &tz}) {
        std::string k = to_string(s->kind);
        o.add(k + " contains 1", s->contains(alg->one()));
        o.add(k + " is closed under multiplication", s->closed_under_mul());
        o.add(k + " is graded", s->graded());
        bool inv = true;
        for (const auto& g : s->generators)
            inv = inv && s->contains(grade_involution(g)) && s->contains(transpose(g)) && s->contains(clifford_involution(g));
        o.add(k + " is preserved by the involutions", inv);
    }
    auto betas = elements_or_sample(c, 0, 20);
    for (const auto& g : tz.generators) {
        CliffordElement a = g.odd_part();
        for (const auto& b : betas)
            o.fold("odd twisted-center elements satisfy a b = b' a", a * b == grade_involution(b) * a,
                   [&] { return json{{"alpha", a.to_string()}, {"beta", b.to_string()}}; });
    }
    return o;
}

Outcome closed_form_vs_solver(const Ctx& c, std::vector<SubalgebraKind> kinds) {
    if (!c.m.is_orthogonal_basis()) return skipped("basis is not orthogonal");
    std::vector<Subalgebra> solved;
    for (auto k : kinds) solved.push_back(solve_subalgebra(c.alg, k));
    Outcome o;
    for (const CliffordElement& a : elements_or_sample(c, 50'000, 500))
        for (size_t k = 0; k < kinds.size(); ++k)
            o.fold("closed form = solver for " + to_string(kinds[k]), orthobasis_membership(a, kinds[k]) == solved[k].contains(a),
                   [&] { return a.to_string(); });
    return o;
}

Outcome check_orthbasis(const Ctx& c) {
    return closed_form_vs_solver(c, {SubalgebraKind::TwistedCenter, SubalgebraKind::Center});
}

Outcome check_commcplus(const Ctx& c) {
    return closed_form_vs_solver(c, {SubalgebraKind::CentralizerEven, SubalgebraKind::EvenCenter});
}

Outcome check_ztildez(const Ctx& c) {
    auto rep = verify_ztildez(c.alg);
    if (!rep.certified) return skipped("hypotheses not certified: " + rep.reason);
    Outcome o;
    o.checks = rep.checks;
    o.witness["pattern"] = rep.pattern;
    if (rep.beta) o.witness["beta"] = rep.beta->to_string();
    o.witness["degenerate"] = rep.degenerate;
    json lit = json::array();
    for (const auto& [name, ok] : rep.literal_checks) lit.push_back({{"name", name}, {"ok", ok}});
    o.witness["literal_q0_clause"] = lit;
    return o;
}

Outcome check_char2(const Ctx& c) {
    const auto& alg = c.alg;
    if (!two_is_zero(alg->ring())) return skipped("2 != 0 in R");
    if (!c.m.is_orthogonal_basis()) return skipped("basis is not orthogonal");
    Subalgebra all = full_algebra(alg, false), even = full_algebra(alg, true);
    Outcome o;
    o.add("Z(C) = C", same_submodule(center(alg), all));
    o.add("twisted center = C", same_submodule(twisted_center(alg), all));
    o.add("C_C(C_+) = C", same_submodule(centralizer_even(alg), all));
    o.add("Z(C_+) = C_+", same_submodule(even_center(alg), even));
    return o;
}

// ---------------------------------------------------------------- section 2

Outcome sequence_subset(const Ctx& c, const std::function<bool(const std::string&)>& pick) {
    auto rep = sequence_checks(c.m, c.spec.budget);
    if (!rep.available) return skipped(rep.reason);
    Outcome o;
    for (const auto& ch : rep.checks)
        if (pick(ch.first)) o.checks.push_back(ch);
    o.witness = {{"group_size", rep.group_size},
                 {"perp_group_size", rep.perp_group_size},
                 {"kernel_size", rep.kernel_size},
                 {"perp_kernel_size", rep.perp_kernel_size}};
    if (o.checks.empty()) return skipped("no applicable sub-checks");
    return o;
}

bool is_euler_check(const std::string& s) { return s.rfind("E_{", 0) == 0; }
bool is_omperp_check(const std::string& s) { return s.find("O_{M^perp}") != std::string::npos && !is_euler_check(s); }

Outcome check_odecom(const Ctx& c) {
    return sequence_subset(c, [](const std::string& s) { return !is_euler_check(s) && !is_omperp_check(s); });
}
Outcome check_omperp(const Ctx& c) { return sequence_subset(c, is_omperp_check); }
Outcome check_xotimesu(const Ctx& c) { return sequence_subset(c, is_euler_check); }

// 2e = 1 − δ has no solution, so δ is not of the form 1 − 2e.
bool outside_idem_image_by_parity(const RingElement& delta) {
    const Ring& r = delta.ring();
    Matrix two(r, 1, 1);
    two.at(0, 0) = r.from_int(2);
    return !solve_linear(two, Vec{r.one() - delta}).has_value();
}

Outcome check_idem(const Ctx& c) {
    const Ring& r = c.m.ring();
    Outcome o;
    std::vector<RingElement> idem;
    try {
        idem = r.idempotents();
    } catch (const NotComputable&) {
    }
    if (!idem.empty()) {
        std::set<RingElement> iset(idem.begin(), idem.end());
        RingElement z = r.zero();
        for (const auto& e : idem) {
            o.fold("0 is the identity", idem_add(e, z) == e);
            o.fold("e + e = 0", idem_add(e, e).is_zero());
            o.fold("idem_to_mu2 lands in mu2", in_mu2(idem_to_mu2(e)));
            o.fold("ker idem_to_mu2 = Idem cap R[2]", idem_to_mu2(e).is_one() == in_two_torsion(e),
                   [&] { return e.to_string(); });
            for (const auto& f : idem) {
                RingElement s = idem_add(e, f);
                o.fold("closed under +", iset.count(s) > 0, [&] { return json{e.to_string(), f.to_string()}; });
                o.fold("+ is commutative", s == idem_add(f, e));
                o.fold("idem_to_mu2 is a homomorphism", idem_to_mu2(s) == idem_to_mu2(e) * idem_to_mu2(f),
                       [&] { return json{e.to_string(), f.to_string()}; });
                if (idem.size() <= 16)
                    for (const auto& g : idem) {
                        o.fold("+ is associative", idem_add(s, g) == idem_add(e, idem_add(f, g)));
                        o.fold("multiplication distributes over +", g * s == idem_add(g * e, g * f));
                    }
            }
        }
        if (r.is_finite() && r.size() <= 100'000) {
            std::set<RingElement> image;
            for (const auto& e : idem) image.insert(idem_to_mu2(e));
            json outside = json::array();
            for (const auto& d : r.elements())
                if (in_mu2(d) && !image.count(d)) outside.push_back(d.to_string());
            o.witness["mu2_outside_image"] = outside;
        }
    }
    if (r.descriptor().kind == RingDescriptor::Kind::QuotientPoly && r.degree() == 2) {
        RingElement x = r.parse_element("X");
        bool outside = idem.empty() ? outside_idem_image_by_parity(x)
                                    : std::none_of(idem.begin(), idem.end(), [&](auto& e) { return idem_to_mu2(e) == x; });
        o.witness["X_in_mu2"] = in_mu2(x);
        o.witness["X_outside_idem_image"] = outside;
        if (r.descriptor() == RingDescriptor::parse("Z[X]/(X^2-1)")) {
            o.add("X in mu2", in_mu2(x));
            o.add("X is not of the form 1 - 2e", outside);
        }
    }
    if (o.checks.empty()) return skipped("idempotents not computable over " + r.to_string());
    return o;
}

Outcome check_mref(const Ctx& c) {
    const auto& m = c.m;
    std::vector<Vec> perp;
    if (m.ring().is_finite()) {
        perp = enumerate_span(m.ring(), m.rank(), kernel_perp(m).perp, 10'000);
    } else {
        for (const Vec& g : kernel_perp(m).perp)
            for (int64_t k = -2; k <= 2; ++k) perp.push_back(scale(m.ring().from_int(k), g));
    }
    Outcome o;
    size_t applied = 0;
    for (const auto& d : reflections(m, c.spec.budget))
        for (const Vec& u : perp) {
            if (!(d.e * m.eval_q(u)).is_zero()) continue;
            try {
                bool ok = relation_mref(m, d, u);
                ++applied;
                o.fold("r_x r_{x - q(x)u} = E_{u,x}", ok, [&] { return json{{"x", vec_json(d.x)}, {"u", vec_json(u)}}; });
            } catch (const PreconditionFailed&) {
            }
        }
    if (!applied) return skipped("no reflection with a compatible u in M^perp");
    o.witness["instances"] = applied;
    return o;
}

Outcome check_rxrels(const Ctx& c) {
    const auto& m = c.m;
    const Ring& r = m.ring();
    auto idem = idempotents_of(r);
    auto refl = reflections(m, c.spec.budget);
    if (refl.size() > 200) {
        std::shuffle(refl.begin(), refl.end(), c.rng);
        refl.resize(200);
    }
    Outcome o;
    auto attempt = [&](const std::string& name, const std::function<bool()>& f, const std::function<json()>& detail) {
        try {
            o.fold(name, f(), detail);
        } catch (const PreconditionFailed&) {
        }
    };
    for (const auto& d : refl) {
        for (const auto& eps : idem) {
            attempt("r_{eps x} acts as r_x on eps M and trivially on (1-eps)M", [&] { return relation_restriction(m, d, eps); },
                    [&] { return json{{"x", vec_json(d.x)}, {"eps", eps.to_string()}}; });
            for (const auto& eps2 : idem)
                attempt("r_{eps x} r_{eps' x} = r_{(eps + eps')x}",
                        [&] { return relation_idempotent_sum(m, d, eps, eps2); },
                        [&] { return json{{"x", vec_json(d.x)}, {"eps", eps.to_string()}, {"eps2", eps2.to_string()}}; });
        }
    }
    for (auto [a, b] : pairs_of(refl, 2'000, c.rng))
        if ((a->e * b->e).is_zero())
            attempt("r_x r_y = r_{x+y} for orthogonal idempotents", [&] { return relation_orthogonal_sum(m, *a, *b); },
                    [&] { return json{{"x", vec_json(a->x)}, {"y", vec_json(b->x)}}; });
    auto eul = euler_pairs(c, m, 50'000, 200);
    for (auto [a, b] : pairs_of(eul, 2'000, c.rng)) {
        attempt("E_{u,x} E_{u,z} = E_{u,x+z}", [&] { return relation_euler_additive(m, a->u, a->x, b->x); },
                [&] { return json{{"u", vec_json(a->u)}, {"x", vec_json(a->x)}, {"z", vec_json(b->x)}}; });
        attempt("E_{u,x} E_{v,x} exchange", [&] { return relation_euler_exchange(m, a->u, b->u, a->x); },
                [&] { return json{{"u", vec_json(a->u)}, {"v", vec_json(b->u)}, {"x", vec_json(a->x)}}; });
    }
    for (size_t k = 0; k < std::min<size_t>(eul.size(), 200); ++k) {
        RingElement s = random_element(r, c.rng);
        attempt("E_{au,x} = E_{u,ax}", [&] { return relation_euler_scaling(m, eul[k], s); },
                [&] { return json{{"u", vec_json(eul[k].u)}, {"x", vec_json(eul[k].x)}, {"a", s.to_string()}}; });
    }
    if (o.checks.empty()) return skipped("no instances satisfy the hypotheses");
    return o;
}

Outcome check_dettrans(const Ctx& c) {
    const auto& m = c.m;
    Outcome o;
    for (int k = 0; k < 200; ++k) {
        Vec z = random_vec(m.ring(), m.rank(), c.rng), t = random_vec(m.ring(), m.rank(), c.rng);
        o.fold("det T_{z,t} = 1 + (z,t)", determinant(transvection(m, z, t)) == transvection_det(m, z, t),
               [&] { return json{{"z", vec_json(z)}, {"t", vec_json(t)}}; });
    }
    return o;
}

Outcome check_deteuler(const Ctx& c) {
    const auto& m = c.m;
    Outcome o;
    size_t n = 0, without = 0;
    for (const auto& d : euler_pairs(c, m, 200'000, 200)) {
        ++n;
        if (!euler_det_condition(m, d)) {
            ++without;
            continue;
        }
        o.fold("det E_{u,x} = 1", determinant(euler_transformation(m, d)).is_one(),
               [&] { return json{{"u", vec_json(d.u)}, {"x", vec_json(d.x)}}; });
    }
    if (o.checks.empty()) return skipped("no certified Euler pair satisfies the determinant condition");
    o.witness = {{"instances", n}, {"without_det_condition", without}};
    return o;
}

Outcome check_detref(const Ctx& c) {
    Outcome o;
    size_t n = 0;
    for (const auto& d : reflections(c.m, c.spec.budget)) {
        ++n;
        o.fold("det r_x = 1 - 2e", determinant(e_reflection(c.m, d)) == idem_to_mu2(d.e),
               [&] { return json{{"e", d.e.to_string()}, {"x", vec_json(d.x)}}; });
    }
    if (!n) return skipped("no admissible reflections");
    o.witness["reflections"] = n;
    return o;
}

bool is_f2_swap_example(const QuadraticModule& m) {
    const Ring& r = m.ring();
    return r.descriptor() == RingDescriptor::mod(2) && m.rank() == 2 && m.eval_q(unit_vec(r, 2, 0)).is_one() &&
           m.eval_q(unit_vec(r, 2, 1)).is_zero() && m.gram().at(0, 1).is_one();
}

Outcome check_trivref(const Ctx& c) {
    const auto& m = c.m;
    const Ring& r = m.ring();
    Outcome o;
    for (const auto& d : reflections(m, c.spec.budget)) {
        bool trivial = e_reflection(m, d).is_identity();
        o.fold("r_x trivial iff x in M^perp", trivial == in_perp(m, d.x) && trivial == is_trivial_reflection(m, d),
               [&] { return json{{"e", d.e.to_string()}, {"x", vec_json(d.x)}}; });
    }
    if (is_f2_swap_example(m)) {
        Vec x = unit_vec(r, 2, 0), y = unit_vec(r, 2, 1), xy = add(x, y);
        Matrix rx = e_reflection(m, reflection_data(m, r.one(), x));
        o.add("r_x swaps y and x+y", rx * y == xy && rx * xy == y);
        o.add("r_x is non-trivial", !rx.is_identity());
        o.add("no reflection at y or x+y", !try_reflection_data(m, r.one(), y) && !try_reflection_data(m, r.one(), xy));
    }
    if (o.checks.empty()) return skipped("no admissible reflections");
    return o;
}

// ---------------------------------------------------------------- section 3

struct UnitData {
    CliffordElement a, prime_inv;
};

std::vector<UnitData> all_units(const Ctx& c) {
    std::vector<UnitData> out;
    for (const auto& a : all_elements(c))
        if (auto inv = invert(a)) out.push_back({a, grade_involution(*inv)});
    return out;
}

Outcome check_gammaorth(const Ctx& c) {
    auto kd = kernel_perp(c.m);
    auto pm = paravector_extension(c.m).module;
    Outcome o;
    size_t one_sided = 0;
    for (const auto& u : all_units(c)) {
        for (bool para : {false, true}) {
            auto A = one_sided_matrix(u.a, u.prime_inv, para);
            if (!A) continue;
            const auto& mod = para ? pm : c.m;
            one_sided += !para;
            o.fold(para ? "paravector twisted conjugation is orthogonal and trivial on M_R^perp"
                        : "twisted conjugation is orthogonal and trivial on M^perp",
                   is_orthogonal(mod, *A) && acts_trivially_on_perp(mod, *A), [&] { return u.a.to_string(); });
        }
    }
    if (o.checks.empty()) return skipped("no unit maps M into M");
    o.witness["one_sided_units"] = one_sided;
    return o;
}

Outcome check_invexist(const Ctx& c) {
    Outcome o;
    size_t one_sided = 0, bijective = 0, in_gamma = 0;
    json not_in_gamma = json::array();
    for (const auto& u : all_units(c)) {
        auto A = one_sided_matrix(u.a, u.prime_inv, false);
        if (!A) continue;
        ++one_sided;
        auto g = classify(u.a);
        bool member = g && g->clifford;
        in_gamma += member;
        if (make_map(*A).bijective) {
            ++bijective;
            o.fold("one-sided with bijective action implies membership in Gamma", member, [&] { return u.a.to_string(); });
        } else if (!member && not_in_gamma.size() < 10) {
            not_in_gamma.push_back(u.a.to_string());
        }
    }
    auto allmq = conjecture_allmq_search(c.m, c.spec.budget);
    if (allmq.counterexamples.empty()) o.add("under allMq, one-sided set = Gamma", one_sided == in_gamma);
    o.witness = {{"one_sided", one_sided}, {"bijective", bijective}, {"in_gamma", in_gamma}, {"one_sided_not_in_gamma", not_in_gamma}};
    return o;
}

std::vector<CliffordGroupElement> group(const Ctx& c, GroupFlavor f) { return enumerate_group(c.alg, f, c.spec.budget); }

Outcome check_ocl(const Ctx& c) {
    auto gamma = group(c, GroupFlavor::Clifford);
    Subalgebra tz = twisted_center(c.alg);
    std::set<CliffordElement> members;
    for (const auto& g : gamma) members.insert(g.alpha);
    Outcome o;
    for (const auto& g : gamma)
        o.fold("pi(alpha) = Id iff alpha in twisted center", g.pi->is_identity() == tz.contains(g.alpha),
               [&] { return g.alpha.to_string(); });
    for (auto [a, b] : pairs_of(gamma, 40'000, c.rng)) {
        auto ab = classify(a->alpha * b->alpha);
        o.fold("pi is a homomorphism", ab && ab->clifford && *ab->pi == *a->pi * *b->pi,
               [&] { return json{a->alpha.to_string(), b->alpha.to_string()}; });
    }
    for (const auto& u : all_units(c))
        if (tz.contains(u.a)) o.fold("twisted-center units lie in Gamma", members.count(u.a) > 0, [&] { return u.a.to_string(); });
    o.witness["group_size"] = gamma.size();
    return o;
}

Outcome check_impi(const Ctx& c) {
    Outcome o;
    for (const auto& d : reflections(c.m, c.spec.budget)) {
        auto g = lift_reflection(c.alg, d.e, d.x);
        auto chk = classify(g.alpha);
        o.fold("pi((1-e)+x) = r_x", chk && chk->clifford && *chk->pi == e_reflection(c.m, d) && g.alpha * g.inverse == c.alg->one(),
               [&] { return json{{"e", d.e.to_string()}, {"x", vec_json(d.x)}}; });
    }
    for (const auto& d : euler_pairs(c, c.m, 200'000, 200)) {
        auto g = lift_euler(c.alg, d.u, d.x);
        auto chk = classify(g.alpha);
        o.fold("pi(1 - xu) = E_{u,x}", chk && chk->clifford && *chk->pi == euler_transformation(c.m, d),
               [&] { return json{{"u", vec_json(d.u)}, {"x", vec_json(d.x)}}; });
        o.fold("Euler lift is even", g.alpha.odd_part().is_zero());
    }
    if (o.checks.empty()) return skipped("no admissible reflections or Euler pairs");
    return o;
}

bool unit_multiple(const CliffordElement& a, const CliffordElement& b) {
    const Ring& r = a.ring();
    for (const auto& s : r.elements())
        if (s.try_invert() && a == b.scaled(s)) return true;
    return false;
}

Outcome check_liftrels(const Ctx& c) {
    const auto& m = c.m;
    const Ring& r = m.ring();
    if (!r.is_finite()) return skipped("unit multipliers are searched over a finite ring");
    auto idem = r.idempotents();
    Outcome o;
    auto base = admissible_reflections(m, r.one(), c.spec.budget);
    if (base.size() > 30) base.resize(30);
    for (const auto& d : base) {
        auto lift = [&](const RingElement& eps) { return lift_reflection(c.alg, eps, scale(eps, d.x)).alpha; };
        for (const auto& a : idem)
            for (const auto& b : idem)
                o.fold("lift r_{eps x} lift r_{eps' x} = unit * lift r_{(eps+eps')x}",
                       unit_multiple(lift(a) * lift(b), lift(idem_add(a, b))),
                       [&] { return json{{"x", vec_json(d.x)}, {"eps", a.to_string()}, {"eps2", b.to_string()}}; });
    }
    auto refl = reflections(m, c.spec.budget);
    for (auto [a, b] : pairs_of(refl, 5'000, c.rng)) {
        if (!(a->e * b->e).is_zero() || a->e.is_zero() || b->e.is_zero()) continue;
        auto sum = try_reflection_data(m, a->e + b->e, add(a->x, b->x));
        if (!sum) continue;
        o.fold("orthogonal-idempotent lifts multiply to the lift of r_{x+y}",
               lift_reflection(c.alg, a->e, a->x).alpha * lift_reflection(c.alg, b->e, b->x).alpha ==
                   lift_reflection(c.alg, sum->e, sum->x).alpha,
               [&] { return json{{"x", vec_json(a->x)}, {"y", vec_json(b->x)}}; });
    }
    auto eul = euler_pairs(c, m, 50'000, 200);
    for (auto [a, b] : pairs_of(eul, 3'000, c.rng)) {
        if (a->u != b->u) continue;
        CliffordElement U = c.alg->from_vector(a->u), X = c.alg->from_vector(a->x), Z = c.alg->from_vector(b->x);
        CliffordElement one = c.alg->one();
        CliffordElement gamma = one - (X * Z).scaled(m.eval_q(a->u));
        bool central = gamma.odd_part().is_zero() && invert(gamma).has_value();
        for (size_t i = 0; i < m.rank(); ++i) central = central && gamma * c.alg->generator(i) == c.alg->generator(i) * gamma;
        o.fold("(1-ux)(1-uz) = (1-q(u)xz)(1-u(x+z)) with an even central unit",
               central && (one - U * X) * (one - U * Z) == gamma * (one - U * (X + Z)),
               [&] { return json{{"u", vec_json(a->u)}, {"x", vec_json(a->x)}, {"z", vec_json(b->x)}}; });
    }
    if (o.checks.empty()) return skipped("no admissible reflections or Euler pairs");
    return o;
}

Outcome check_surj_field(const Ctx& c) {
    const Ring& r = c.m.ring();
    if (!is_prime_field(r) || two_is_zero(r)) return skipped("R is not a prime field of characteristic other than 2");
    auto rep = verify_sesgamma(c.alg, c.spec.budget);
    Outcome o;
    o.add("pi is onto O_{M^perp}", rep.image_size == rep.target_size);
    std::vector<Matrix> gens;
    for (const auto& d : admissible_reflections(c.m, r.one())) gens.push_back(e_reflection(c.m, d));
    auto oref = generated_subgroup(gens, c.m.rank(), r, c.spec.budget);
    size_t target = 0;
    for (const auto& f : enumerate_orthogonal(c.m, Restrict::TrivialOnPerp, c.spec.budget)) target += f.bijective;
    o.add("O_{M^perp} = O_ref", oref.size() == target);
    o.witness = {{"image_size", rep.image_size}, {"target_size", rep.target_size}, {"oref_size", oref.size()}};
    return o;
}

bool paravector_name(const std::string& s) {
    return s.find('~') != std::string::npos || s.find("paravector") != std::string::npos || s.find("2 N") != std::string::npos;
}

Outcome involution_subset(const Ctx& c, GroupFlavor f) {
    bool para = f == GroupFlavor::Paravector;
    Outcome o;
    for (const auto& g : group(c, f))
        for (const auto& [name, ok] : involution_action(g).checks)
            if (paravector_name(name) == para) o.fold(name, ok, [&] { return g.alpha.to_string(); });
    if (o.checks.empty()) return skipped("empty group");
    return o;
}

Outcome check_gammainv(const Ctx& c) { return involution_subset(c, GroupFlavor::Clifford); }
Outcome check_invpara(const Ctx& c) { return involution_subset(c, GroupFlavor::Paravector); }

Outcome from_ses(const SesReport& rep) {
    Outcome o;
    o.checks = rep.checks;
    o.witness = {{"hypotheses_certified", rep.hypotheses_certified},
                 {"generation_holds", rep.generation_holds},
                 {"group_size", rep.group_size},
                 {"kernel_size", rep.kernel_size},
                 {"image_size", rep.image_size},
                 {"target_size", rep.target_size}};
    if (!rep.available) o.skip = rep.reason;
    else if (!rep.hypotheses_certified && rep.all_passed())
        o.skip = "hypotheses not certified (" + rep.reason + "); unconditional checks passed";
    return o;
}

Outcome check_sesgamma(const Ctx& c) { return from_ses(verify_sesgamma(c.alg, c.spec.budget)); }
Outcome check_sespara(const Ctx& c) { return from_ses(verify_sespara(c.alg, c.spec.budget)); }

Outcome check_gammadecom(const Ctx& c) {
    auto rep = gammadecom_check(c.alg, c.spec.budget);
    if (!rep.available) return skipped(rep.reason);
    Outcome o;
    o.checks = rep.checks;
    return o;
}

Outcome check_paravector_basics(const Ctx& c) {
    const auto& m = c.m;
    const Ring& r = m.ring();
    size_t n = m.rank();
    auto pm = paravector_extension(m).module;
    Outcome o;
    for (const Vec& v : vectors_or_sample(r, n + 1, 20'000, 300, c.rng)) {
        Vec x(v.begin() + 1, v.end());
        o.fold("q_R(a + x) = q(x) - a^2", pm.eval_q(v) == m.eval_q(x) - v[0] * v[0], [&] { return vec_json(v); });
    }
    if (r.is_finite()) {
        std::vector<Vec> expected;
        for (const auto& t : r.two_torsion_generators()) {
            Vec v = zero_vec(r, n + 1);
            v[0] = t;
            expected.push_back(v);
        }
        for (const Vec& p : kernel_perp(m).perp) {
            Vec v{r.zero()};
            v.insert(v.end(), p.begin(), p.end());
            expected.push_back(v);
        }
        o.add("M_R^perp = R[2] + M^perp", same_span(r, n + 1, kernel_perp(pm).perp, expected));
    }
    for (int k = 0; k < 100; ++k) {
        Vec xi = random_vec(r, n + 1, c.rng), eta = random_vec(r, n + 1, c.rng);
        CliffordElement X = c.alg->from_paravector(xi), Y = c.alg->from_paravector(eta);
        CliffordElement rhs = c.alg->scalar(-pm.eval_pair(xi, eta));
        o.fold("xi eta' + eta xi' = xi' eta + eta' xi = -(xi,eta)_R",
               X * grade_involution(Y) + Y * grade_involution(X) == rhs && grade_involution(X) * Y + grade_involution(Y) * X == rhs,
               [&] { return json{{"xi", vec_json(xi)}, {"eta", vec_json(eta)}}; });
    }
    return o;
}

Vec para_coords(const CliffordElement& a) {
    Vec out{a.coeff(0)};
    for (size_t i = 0; i < a.rank(); ++i) out.push_back(a.coeff(uint32_t(1) << i));
    return out;
}

Outcome check_remr(const Ctx& c) {
    const auto& m = c.m;
    const Ring& r = m.ring();
    size_t n = m.rank();
    auto pm = paravector_extension(m).module;
    auto idem = r.idempotents();
    Outcome o;
    for (const auto& e : idem) {
        Matrix re = paravector_re(m, e);
        std::vector<Vec> cols;
        for (size_t j = 0; j <= n; ++j) {
            CliffordElement eta = c.alg->from_paravector(unit_vec(r, n + 1, j));
            cols.push_back(para_coords(eta.scaled(r.one() - e) - grade_involution(eta).scaled(e)));
        }
        o.fold("r_e(eta) = (1-e)eta - e eta'", re == Matrix::from_columns(r, n + 1, cols), [&] { return e.to_string(); });
        o.fold("r_e trivial iff e in R[2]", re.is_identity() == in_two_torsion(e), [&] { return e.to_string(); });
        o.fold("det r_e = 1 - 2e", determinant(re) == idem_to_mu2(e), [&] { return e.to_string(); });
        if (!e.is_zero())
            o.fold("r_e is the e-reflection at e*1",
                   re == e_reflection(pm, reflection_data(pm, e, scale(e, unit_vec(r, n + 1, 0)))), [&] { return e.to_string(); });
        for (const auto& f : idem)
            o.fold("r_e r_f = r_{e+f}", re * paravector_re(m, f) == paravector_re(m, idem_add(e, f)),
                   [&] { return json{e.to_string(), f.to_string()}; });
    }
    o.witness["idempotents"] = idem.size();
    return o;
}

Outcome check_rxir1(const Ctx& c) {
    const auto& m = c.m;
    const Ring& r = m.ring();
    if (!r.is_finite()) return skipped("group generation needs a finite ring");
    size_t n1 = m.rank() + 1;
    auto pm = paravector_extension(m).module;
    std::vector<Matrix> refl, words;
    std::vector<ReflectionData> data;
    std::set<RingElement> mu_image;
    for (const auto& e : r.idempotents()) {
        mu_image.insert(idem_to_mu2(e));
        Matrix re = paravector_re(m, e);
        for (const auto& d : admissible_reflections(pm, e, c.spec.budget)) {
            Matrix rx = e_reflection(pm, d);
            refl.push_back(rx);
            words.push_back(rx * re);
            data.push_back(d);
        }
    }
    auto oref = generated_subgroup(refl, n1, r, c.spec.budget);
    std::set<RingElement> dets;
    std::set<Matrix> so;
    for (const auto& A : oref) {
        RingElement d = determinant(A);
        dets.insert(d);
        if (d.is_one()) so.insert(A);
    }
    auto gen = generated_subgroup(words, n1, r, c.spec.budget);
    Outcome o;
    o.add("det image on O_ref(M_R) = image of idem_to_mu2", dets == mu_image);
    o.add("SO_ref(M_R) is generated by r_xi r_e", std::set<Matrix>(gen.begin(), gen.end()) == so);
    std::vector<Matrix> phis = oref;
    if (phis.size() > 40) phis.resize(40);
    std::vector<ReflectionData> sample = data;
    if (sample.size() > 40) sample.resize(40);
    for (const auto& phi : phis) {
        Matrix phinv = *inverse(phi);
        for (const auto& d : sample) {
            auto img = try_reflection_data(pm, d.e, phi * d.x);
            o.fold("r_{phi(xi)} = phi r_xi phi^-1", img && e_reflection(pm, *img) == phi * e_reflection(pm, d) * phinv,
                   [&] { return json{{"phi", mat_json(phi)}, {"xi", vec_json(d.x)}}; });
        }
    }
    o.witness = {{"oref_size", oref.size()}, {"so_size", so.size()}};
    return o;
}

Outcome check_paraorth(const Ctx& c) {
    auto para = group(c, GroupFlavor::Paravector);
    auto pm = paravector_extension(c.m).module;
    Subalgebra tz = twisted_center(c.alg), z = center(c.alg);
    const Ring& r = c.m.ring();
    RingElement two = r.from_int(2);
    bool regular = !r.is_zero_divisor(two);
    Outcome o;
    std::set<CliffordElement> kernel;
    for (const auto& g : para) {
        o.fold("pi~ lies in O_{M_R^perp}", is_orthogonal(pm, *g.pi_tilde) && acts_trivially_on_perp(pm, *g.pi_tilde),
               [&] { return g.alpha.to_string(); });
        bool expect = tz.contains(g.alpha) && g.alpha.odd_part().scaled(two).is_zero();
        o.fold("ker pi~ = twisted-center units with 2 alpha_- = 0", g.pi_tilde->is_identity() == expect,
               [&] { return g.alpha.to_string(); });
        if (regular && g.pi_tilde->is_identity())
            o.fold("2-regular: ker pi~ = even central units",
                   g.alpha.odd_part().is_zero() && z.contains(g.alpha) && tz.contains(g.alpha), [&] { return g.alpha.to_string(); });
    }
    o.witness["group_size"] = para.size();
    return o;
}

Outcome check_tildepi(const Ctx& c) {
    const auto& m = c.m;
    const Ring& r = m.ring();
    auto pm = paravector_extension(m).module;
    Outcome o;
    for (const auto& e : r.idempotents()) {
        Matrix re = paravector_re(m, e);
        for (const auto& d : admissible_reflections(pm, e, c.spec.budget)) {
            auto g = lift_paravector_reflection(c.alg, e, d.x);
            auto chk = classify(g.alpha);
            o.fold("pi~((1-e) + xi) = r_xi r_e", chk && chk->paravector && *chk->pi_tilde == e_reflection(pm, d) * re,
                   [&] { return json{{"e", e.to_string()}, {"xi", vec_json(d.x)}}; });
        }
    }
    for (const auto& d : euler_pairs(c, pm, 50'000, 200)) {
        auto g = lift_paravector_euler(c.alg, d.u, d.x);
        auto chk = classify(g.alpha);
        o.fold("pi~(1 + xi upsilon') = E_{upsilon,xi}", chk && chk->paravector && *chk->pi_tilde == euler_transformation(pm, d),
               [&] { return json{{"upsilon", vec_json(d.u)}, {"xi", vec_json(d.x)}}; });
    }
    return o;
}

// Hypotheses of the non-surjectivity statement for one idempotent, checked in eR.
bool notsurj_hypotheses(const QuadraticModule& m, const RingElement& e, std::string* why) {
    const Ring& r = m.ring();
    if (!m.is_orthogonal_basis()) {
        *why = "basis is not orthogonal";
        return false;
    }
    auto zero_divisor_in_eR = [&](const RingElement& a) {
        for (const auto& s : r.elements()) {
            RingElement b = e * s;
            if (!b.is_zero() && (a * b).is_zero()) return true;
        }
        return false;
    };
    if (zero_divisor_in_eR(e * r.from_int(2))) {
        *why = "2 is a zero-divisor in eR";
        return false;
    }
    for (const auto& q : m.qdiag()) {
        RingElement eq = e * q;
        if (!eq.is_zero() && zero_divisor_in_eR(eq)) {
            *why = "a nonzero e*q_i is a zero-divisor in eR";
            return false;
        }
    }
    return true;
}

Outcome check_notsurj(const Ctx& c) {
    const Ring& r = c.m.ring();
    if (!r.is_finite()) return skipped("image of pi~ is enumerated over a finite ring");
    std::set<Matrix> image;
    for (const auto& g : group(c, GroupFlavor::Paravector)) image.insert(*g.pi_tilde);
    Outcome o;
    json uncertified = json::object();
    for (const auto& e : r.idempotents()) {
        if (e.is_zero()) continue;
        std::string why;
        if (!notsurj_hypotheses(c.m, e, &why)) {
            uncertified[e.to_string()] = why;
            continue;
        }
        o.fold("r_e is not in the image of pi~", !image.count(paravector_re(c.m, e)), [&] { return e.to_string(); });
    }
    if (o.checks.empty()) return skipped("no nonzero idempotent with certified hypotheses");
    o.witness = {{"image_size", image.size()}, {"uncertified", uncertified}};
    return o;
}

Outcome check_ehom(const Ctx& c) {
    Outcome o;
    size_t homogeneous = 0;
    for (const auto& u : all_units(c)) {
        if (!homogeneity_degree(u.a)) continue;
        ++homogeneous;
        for (const auto& [name, ok] : ehom_check(u.a).checks) o.fold(name.substr(0, name.find(" for e =")), ok, [&] { return u.a.to_string(); });
    }
    if (o.checks.empty()) return skipped("no homogeneous units");
    o.witness["homogeneous_units"] = homogeneous;
    return o;
}

Outcome check_condint(const Ctx& c) {
    const auto& m = c.m;
    const Ring& r = m.ring();
    size_t n1 = m.rank() + 1;
    RingElement two = r.from_int(2);
    Matrix r1 = paravector_re(m, r.one());
    auto idem = r.idempotents();
    Outcome o;
    json relaxed_only = json::array();
    for (const auto& g : group(c, GroupFlavor::Paravector)) {
        const Matrix& p = *g.pi_tilde;
        auto preserves_r = [&](const RingElement& mult) {
            Vec col = p.column(0), want = zero_vec(r, n1);
            want[0] = mult;
            return col == want;
        };
        bool preserves_m = true;
        for (size_t j = 1; j < n1; ++j) preserves_m = preserves_m && p.at(0, j).is_zero();
        auto deg = homogeneity_degree(g.alpha);
        if (deg) {
            RingElement mult = idem_to_mu2(*deg);
            o.fold("(1) implies (2): pi~ preserves R with multiplier 1-2e", preserves_r(mult), [&] { return g.alpha.to_string(); });
            o.fold("(1) implies (3): pi~ preserves M", preserves_m, [&] { return g.alpha.to_string(); });
            o.fold("(1) implies (4): alpha in Gamma", g.clifford, [&] { return g.alpha.to_string(); });
            o.fold("(1) implies (5): pi~ commutes with r_1", p * r1 == r1 * p, [&] { return g.alpha.to_string(); });
            o.fold("alpha' = (1-2e) alpha", grade_involution(g.alpha) == g.alpha.scaled(mult), [&] { return g.alpha.to_string(); });
        }
        for (const auto& e : idem) {
            CliffordElement lo = g.alpha.scaled(r.one() - e), hi = g.alpha.scaled(e);
            if (!lo.odd_part().scaled(two).is_zero() || !hi.even_part().scaled(two).is_zero()) continue;
            o.fold("relaxed degree-e condition gives (2) with multiplier 1-2e", preserves_r(idem_to_mu2(e)),
                   [&] { return json{{"alpha", g.alpha.to_string()}, {"e", e.to_string()}}; });
            if (!deg && relaxed_only.size() < 10) relaxed_only.push_back(g.alpha.to_string());
        }
    }
    auto mult = multiplier_search(c.alg, c.spec.budget);
    json hits = json::array();
    for (const auto& [a, d] : mult.hits) hits.push_back({{"alpha", a.to_string()}, {"delta", d.to_string()}});
    o.witness = {{"non_homogeneous_with_condition_2", relaxed_only}, {"multiplier_searched", mult.searched}, {"multiplier_hits", hits}};
    if (o.checks.empty()) return skipped("no members");
    return o;
}

Outcome check_vahlen(const Ctx& c) {
    auto gamma = group(c, GroupFlavor::Clifford);
    auto res = vahlen_filter(gamma);
    std::set<CliffordElement> kept;
    for (const auto& g : res.kept) kept.insert(g.alpha);
    Outcome o;
    for (const auto& g : gamma)
        o.fold("kept iff norm is a unit scalar", kept.count(g.alpha) == size_t(unit_scalar(norm(g.alpha))),
               [&] { return g.alpha.to_string(); });
    o.add("kept set is closed under products", res.closed);
    for (const auto& d : reflections(c.m, c.spec.budget)) {
        if (!d.e.is_one()) continue;
        o.fold("reflection lifts are kept", kept.count(lift_reflection(c.alg, d.e, d.x).alpha) > 0);
    }
    for (const auto& d : euler_pairs(c, c.m, 50'000, 100)) o.fold("Euler lifts are kept", kept.count(lift_euler(c.alg, d.u, d.x).alpha) > 0);
    o.witness = {{"group_size", gamma.size()}, {"kept", res.kept.size()}};
    return o;
}

Outcome check_allmq(const Ctx& c) {
    auto rep = conjecture_allmq_search(c.m, c.spec.budget);
    Outcome o;
    json ce = json::array();
    for (const auto& A : rep.counterexamples) ce.push_back(mat_json(A));
    o.witness = {{"searched", rep.searched}, {"counterexamples", ce}};
    return o;
}

Outcome check_emptyint(const Ctx& c) {
    if (two_is_zero(c.m.ring())) return skipped("2 = 0 in R");
    auto rep = conjecture_emptyint_search(c.alg, c.spec.budget);
    Outcome o;
    json ce = json::array();
    for (const auto& a : rep.counterexamples) ce.push_back(a.to_string());
    o.witness = {{"searched", rep.searched}, {"counterexamples", ce}};
    return o;
}

struct Entry {
    std::string id;
    Outcome (*fn)(const Ctx&);
    std::vector<Instance> defaults;
};

Instance I(std::string ring, std::vector<int64_t> q) { return Instance{std::move(ring), std::move(q), std::nullopt}; }

Instance f2_hyperbolic() { return Instance{"Z/2", {1, 0}, std::vector<std::vector<int64_t>>{{0, 1}, {1, 0}}}; }

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = [] {
        std::vector<Instance> integers{I("Z", {0, 1}), I("Z", {1, 1}), I("Z", {1, 0, 2}), I("Z", {0, 0, 1}), I("Z", {1, -1, 2})};
        std::vector<Instance> small{I("Z/2", {1, 0}), I("Z/3", {1, 0}), I("Z/4", {1, 1}), I("Z/6", {1, 3}), I("Z/9", {1, 3}),
                                    I("Z/15", {1, 5})};
        std::vector<Instance> finite_groups{I("Z/2", {1, 1}), I("Z/3", {1, 0}), I("Z/3", {1}), I("Z/4", {1, 0}), I("Z/5", {1, 2}),
                                            I("Z/6", {1}), I("Z/9", {1, 0}), I("Z/15", {1})};
        std::vector<Instance> reflect{I("Z/6", {1, 3}), I("Z/15", {1, 1}), I("Z/4", {1, 1}), I("Z/3", {1, 0}), I("Z/2", {1, 0}), f2_hyperbolic(),
                                      I("Z", {0, 1}), I("Z", {1, 1, 0})};
        auto join = [](std::vector<Instance> a, const std::vector<Instance>& b) {
            a.insert(a.end(), b.begin(), b.end());
            return a;
        };
        return std::vector<Entry>{
            {"lemma-fog2", check_fog2, join(small, {I("Z/2", {1})})},
            {"lemma-annby2", check_annby2, join(small, {I("Z", {1, 0}), I("Z/6", {1})})},
            {"lemma-signaniso", check_signaniso, join(small, {I("Z", {1, 0, 2}), I("Z", {2, -1, 3})})},
            {"prop-zcalg", check_zcalg, join(integers, {I("Z/4", {1, 2}), I("Z/6", {1, 3}), I("Z/2", {1, 1})})},
            {"prop-orthbasis", check_orthbasis, join(small, integers)},
            {"prop-commcplus", check_commcplus, join(small, integers)},
            {"thm-ztildez", check_ztildez, join(integers, {I("Z", {0, 0}), I("Z", {0, 0, 0}), I("Z/3", {1, 0}), I("Z/9", {1, 0})})},
            {"remark-char2", check_char2, {I("Z/2", {1}), I("Z/2", {1, 0}), I("Z/2", {1, 1}), I("Z/2[X]/(X^2)", {1, 0}),
                                           I("Z/2[X]/(X^2)", {1, 1})}},
            {"lemma-odecom", check_odecom, {I("Z/3", {1, 0}), I("Z/2", {1, 0}), I("Z/3", {0, 0}), I("Z/4", {1, 2}), f2_hyperbolic()}},
            {"lemma-omperp", check_omperp, {I("Z/3", {1, 0}), I("Z/2", {1, 0}), I("Z/3", {0, 0}), I("Z/4", {1, 2}), f2_hyperbolic()}},
            {"lemma-idem", check_idem, {I("Z/6", {1}), I("Z/15", {1}), I("Z/30", {1}), I("Z/4", {1}), I("Z[X]/(X^2-1)", {1}),
                                        I("Z/3[X]/(X^2-1)", {1}), I("Z/3 x Z/4", {1})}},
            {"cor-xotimesu", check_xotimesu, {I("Z/3", {1, 0}), I("Z/3", {0, 0}), I("Z/2", {1, 0}), I("Z/4", {1, 2})}},
            {"remark-mref", check_mref, {I("Z/3", {1, 0}), I("Z/5", {1, 0}), I("Z/6", {1, 0}), I("Z/15", {1, 0}), I("Z", {1, 0})}},
            {"lemma-rxrels", check_rxrels, reflect},
            {"lemma-dettrans", check_dettrans, join(integers, {I("Z/6", {1, 3}), I("Z/15", {1, 1}), I("Z/4", {1, 1})})},
            {"cor-deteuler", check_deteuler, {I("Z", {0, 1}), I("Z", {0, 0, 1}), I("Z", {1, 0, 2}), I("Z/3", {1, 0}), I("Z/3", {0, 0}),
                                              I("Z/4", {1, 2})}},
            {"prop-detref", check_detref, reflect},
            {"prop-trivref", check_trivref, reflect},
            {"lemma-gammaorth", check_gammaorth, finite_groups},
            {"cor-invexist", check_invexist, finite_groups},
            {"cor-ocl", check_ocl, finite_groups},
            {"prop-impi", check_impi, {I("Z/6", {1}), I("Z/6", {1, 3}), I("Z", {0, 1}), I("Z/3", {1, 0}), I("Z/15", {1}), I("Z/4", {1, 2})}},
            {"remark-liftrels", check_liftrels, {I("Z/15", {1}), I("Z/15", {1, 1}), I("Z/6", {1, 3}), I("Z/3", {0, 1, 1}), I("Z/9", {0, 1, 1})}},
            {"cor-surj-field-case", check_surj_field, {I("Z/3", {1}), I("Z/3", {1, 0}), I("Z/3", {1, 1}), I("Z/5", {1, 2}), I("Z/5", {1, 0})}},
            {"prop-gammainv", check_gammainv, finite_groups},
            {"thm-sesgamma", check_sesgamma, {I("Z/3", {1, 0}), I("Z/3", {1}), I("Z/3", {1, 1}), I("Z/5", {1, 2}), I("Z/9", {1, 0}),
                                              I("Z/2", {1, 0})}},
            {"cor-gammadecom", check_gammadecom, {I("Z/15", {1}), I("Z/3", {1, 1}), I("Z/5", {1, 2}), I("Z/6", {1})}},
            {"paravector-basics", check_paravector_basics, join(small, {I("Z", {0, 1}), I("Z", {1, 1, 0})})},
            {"cor-remr", check_remr, {I("Z/6", {1}), I("Z/15", {1}), I("Z/30", {1}), I("Z/3 x Z/4", {1}), I("Z", {1, 0}), I("Z/2", {1})}},
            {"lemma-rxir1", check_rxir1, {I("Z/3", {1}), I("Z/3", {0}), I("Z/6", {1}), I("Z/5", {1}), I("Z/2", {1})}},
            {"prop-paraorth", check_paraorth, finite_groups},
            {"prop-tildepi", check_tildepi, {I("Z/3", {1}), I("Z/3", {1, 0}), I("Z/6", {1}), I("Z/15", {1}), I("Z/4", {1, 0})}},
            {"prop-notsurj", check_notsurj, {I("Z/3", {1}), I("Z/3", {1, 0}), I("Z/5", {1, 2}), I("Z/15", {1}), I("Z/6", {1})}},
            {"prop-invpara", check_invpara, finite_groups},
            {"thm-sespara", check_sespara, {I("Z/3", {1}), I("Z/3", {1, 0}), I("Z/5", {1}), I("Z/5", {1, 0}), I("Z/9", {1}), I("Z/2", {1, 1})}},
            {"prop-ehom", check_ehom, {I("Z/15", {1}), I("Z/6", {1}), I("Z/3", {1, 0}), I("Z/4", {1, 1})}},
            {"remark-condint-examples", check_condint, {I("Z/15", {1}), I("Z/6", {1}), I("Z/3", {1, 0}), I("Z/4", {1, 1}), I("Z/8", {1}),
                                                        I("Z/4[X]/(X^2-1)", {1})}},
            {"remark-vahlen-filter", check_vahlen, {I("Z/3", {1, 0}), I("Z/3", {0, 0}), I("Z/5", {1, 0}), I("Z/4", {1, 1}), I("Z/15", {1})}},
            {"conj-allmq", check_allmq, {f2_hyperbolic(), I("Z/2", {1, 0}), I("Z/3", {1, 0}), I("Z/4", {1, 2}), I("Z/4", {2, 0}), I("Z/6", {1, 3}),
                                         I("Z/9", {3, 0}), I("Z/2[X]/(X^2)", {1, 0})}},
            {"conj-emptyint", check_emptyint, {I("Z/3", {1}), I("Z/3", {1, 0}), I("Z/3", {0, 0}), I("Z/4", {1, 0}), I("Z/4", {2, 2}),
                                               I("Z/9", {3, 0}), I("Z/6", {1})}},
        };
    }();
    return table;
}

const Entry& entry(const std::string& id) {
    for (const auto& e : entries())
        if (e.id == id) return e;
    throw Error("unknown check id: " + id);
}

}  // namespace

const std::vector<std::string>& registry() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& e : entries()) out.push_back(e.id);
        return out;
    }();
    return ids;
}

bool in_registry(const std::string& id) {
    const auto& r = registry();
    return std::find(r.begin(), r.end(), id) != r.end();
}

bool is_report_only(const std::string& id) { return id.rfind("conj-", 0) == 0; }

CheckReport run_check(const CheckSpec& spec) {
    const Entry& e = entry(spec.id);
    CheckReport rep;
    rep.id = spec.id;
    rep.instance = spec.instance;
    rep.must_pass = !is_report_only(spec.id);
    auto start = std::chrono::steady_clock::now();
    QuadraticModule m = spec.instance.build();
    Ctx ctx{spec, m, CliffordAlgebra::create(m), std::mt19937_64(spec.seed)};
    Outcome o;
    try {
        o = e.fn(ctx);
    } catch (const BudgetExceeded& ex) {
        o = skipped(std::string("budget exceeded: ") + ex.what());
    } catch (const NotComputable& ex) {
        o = skipped(std::string("not computable: ") + ex.what());
    } catch (const PreconditionFailed& ex) {
        o = skipped(std::string("precondition failed: ") + ex.what());
    } catch (const std::exception& ex) {
        o = Outcome{};
        o.add("completed without error", false);
        o.witness["error"] = ex.what();
    }
    rep.checks = o.checks;
    rep.witness = o.witness;
    bool failed = std::any_of(o.checks.begin(), o.checks.end(), [](const auto& c) { return !c.second; });
    if (failed) {
        rep.verdict = Verdict::Fail;
        std::string names;
        for (const auto& [name, ok] : o.checks)
            if (!ok) names += (names.empty() ? "" : "; ") + name;
        rep.reason = "failed: " + names;
        rep.witness["replay"] = {{"id", spec.id}, {"instance", spec.instance.to_json()}, {"seed", spec.seed}, {"budget", spec.budget}};
    } else if (o.skip) {
        rep.verdict = Verdict::Skipped;
        rep.reason = *o.skip;
    } else if (!rep.must_pass) {
        rep.verdict = Verdict::Report;
        rep.witness["replay"] = {{"id", spec.id}, {"instance", spec.instance.to_json()}, {"seed", spec.seed}, {"budget", spec.budget}};
    }
    // A failing report-only check is still a finding, never a build failure.
    if (!rep.must_pass && rep.verdict == Verdict::Fail) rep.verdict = Verdict::Report;
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<Instance> default_instances(const std::string& id) { return entry(id).defaults; }

std::vector<CheckSpec> default_battery(uint64_t budget, uint64_t seed) {
    std::vector<CheckSpec> out;
    for (const auto& e : entries())
        for (const auto& in : e.defaults) out.push_back(CheckSpec{e.id, in, budget, seed});
    return out;
}

std::vector<CheckReport> run_suite(const std::vector<CheckSpec>& specs, bool default_instances_on, uint64_t budget, uint64_t seed) {
    std::vector<CheckSpec> all = specs;
    if (default_instances_on) {
        auto d = default_battery(budget, seed);
        all.insert(all.end(), d.begin(), d.end());
    }
    std::map<std::string, size_t> order;
    for (size_t i = 0; i < registry().size(); ++i) order[registry()[i]] = i;
    for (const auto& s : all)
        if (!order.count(s.id)) throw Error("unknown check id: " + s.id);
    std::stable_sort(all.begin(), all.end(), [&](const CheckSpec& a, const CheckSpec& b) { return order[a.id] < order[b.id]; });
    std::vector<CheckReport> out;
    for (const auto& s : all) out.push_back(run_check(s));
    return out;
}

bool suite_passed(const std::vector<CheckReport>& reports) {
    return std::none_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.must_pass && r.verdict == Verdict::Fail; });
}

json to_json(const std::vector<CheckReport>& reports, bool with_time) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.to_json(with_time));
    return arr;
}

std::string to_table(const std::vector<CheckReport>& reports) {
    size_t wid = 2, win = 8;
    for (const auto& r : reports) {
        wid = std::max(wid, r.id.size());
        win = std::max(win, r.instance.label().size());
    }
    std::ostringstream os;
    auto pad = [](std::string s, size_t w) {
        s.resize(std::max(s.size(), w), ' ');
        return s;
    };
    os << pad("id", wid) << "  " << pad("instance", win) << "  " << pad("verdict", 7) << "  reason\n";
    for (const auto& r : reports)
        os << pad(r.id, wid) << "  " << pad(r.instance.label(), win) << "  " << pad(to_string(r.verdict), 7) << "  " << r.reason << "\n";
    size_t pass = 0, fail = 0, skip = 0, rep = 0;
    for (const auto& r : reports) {
        pass += r.verdict == Verdict::Pass;
        fail += r.verdict == Verdict::Fail;
        skip += r.verdict == Verdict::Skipped;
        rep += r.verdict == Verdict::Report;
    }
    os << pass << " pass, " << fail << " fail, " << skip << " skipped, " << rep << " report\n";
    return os.str();
}

}  // namespace cliffring
