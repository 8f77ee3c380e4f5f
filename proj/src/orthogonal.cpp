#include "cliffring/orthogonal.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cliffring {

namespace {

Matrix map_from_images(const QuadraticModule& m, const std::function<Vec(const Vec&)>& f) {
    const Ring& r = m.ring();
    std::vector<Vec> cols;
    for (size_t j = 0; j < m.rank(); ++j) cols.push_back(f(unit_vec(r, m.rank(), j)));
    return Matrix::from_columns(r, m.rank(), cols);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionFailed(what);
}

bool vec_eq(const Vec& a, const Vec& b) { return VecEq{}(a, b); }

Matrix submatrix(const Matrix& A, const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
    Matrix S(A.ring(), rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) S.at(i, j) = A.at(rows[i], cols[j]);
    return S;
}

// Adapted-basis matrix [[0, Ψ], [0, 0]] placed back in old coordinates.
Matrix embed_hom(const KernelSplitting& s, const Matrix& psi) {
    const Ring& r = s.U.ring();
    size_t n = s.U.rows();
    Matrix B(r, n, n);
    for (size_t i = 0; i < s.killed.size(); ++i)
        for (size_t j = 0; j < s.kept.size(); ++j) B.at(s.killed[i], s.kept[j]) = psi.at(i, j);
    return s.U * B * s.Uinv;
}

// All rows×cols matrices over a finite ring in lexicographic order.
std::vector<Matrix> all_matrices(const Ring& r, size_t rows, size_t cols, uint64_t budget) {
    std::vector<Matrix> out;
    for (const Vec& v : all_vectors(r, rows * cols, budget)) {
        Matrix M(r, rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) M.at(i, j) = v[i * cols + j];
        out.push_back(std::move(M));
    }
    return out;
}

}  // namespace

OrthogonalMap make_map(const Matrix& A) {
    OrthogonalMap out{A, false, inverse(A)};
    out.bijective = out.inverse.has_value();
    return out;
}

bool is_orthogonal(const QuadraticModule& m, const Matrix& A) {
    if (A.rows() != m.rank() || A.cols() != m.rank()) throw DescriptorMismatch("matrix size does not match module rank");
    std::vector<Vec> cols;
    for (size_t j = 0; j < m.rank(); ++j) cols.push_back(A.column(j));
    for (size_t i = 0; i < m.rank(); ++i) {
        if (m.eval_q(cols[i]) != m.qdiag()[i]) return false;
        for (size_t j = i + 1; j < m.rank(); ++j)
            if (m.eval_pair(cols[i], cols[j]) != m.gram().at(i, j)) return false;
    }
    return true;
}

bool acts_trivially_on_perp(const QuadraticModule& m, const Matrix& A) {
    for (const Vec& v : kernel_perp(m).perp)
        if (!vec_eq(A * v, v)) return false;
    return true;
}

std::optional<ReflectionData> try_reflection_data(const QuadraticModule& m, const RingElement& e, const Vec& x) {
    if (!is_idempotent(e) || x.size() != m.rank()) return std::nullopt;
    if (!vec_eq(scale(e, x), x)) return std::nullopt;
    const Ring& r = m.ring();
    Matrix A(r, 1, 1);
    A.at(0, 0) = m.eval_q(x);
    auto sol = solve_linear(A, Vec{e});
    if (!sol) return std::nullopt;
    return ReflectionData{e, x, e * (*sol)[0]};
}

ReflectionData reflection_data(const QuadraticModule& m, const RingElement& e, const Vec& x) {
    require(is_idempotent(e), "e is not idempotent");
    require(x.size() == m.rank(), "vector length does not match module rank");
    require(vec_eq(scale(e, x), x), "x is not in eM");
    auto d = try_reflection_data(m, e, x);
    require(d.has_value(), "q(x) is not a unit of eR");
    return *d;
}

Matrix e_reflection(const QuadraticModule& m, const ReflectionData& d) {
    return map_from_images(m, [&](const Vec& y) { return sub(y, scale(m.eval_pair(d.x, y) * d.t, d.x)); });
}

bool is_trivial_reflection(const QuadraticModule& m, const ReflectionData& d) {
    return e_reflection(m, d).is_identity();
}

std::optional<EulerData> try_euler_data(const QuadraticModule& m, const Vec& u, const Vec& x) {
    if (u.size() != m.rank() || x.size() != m.rank()) return std::nullopt;
    if (!m.eval_pair(u, x).is_zero()) return std::nullopt;
    RingElement qu = m.eval_q(u);
    if (!(qu * m.eval_q(x)).is_zero()) return std::nullopt;
    for (const RingElement& c : m.pairing_row(x))
        if (!(qu * c).is_zero()) return std::nullopt;
    return EulerData{u, x};
}

EulerData euler_data(const QuadraticModule& m, const Vec& u, const Vec& x) {
    auto d = try_euler_data(m, u, x);
    require(d.has_value(), "Euler certificates fail: need (u,x) = 0, q(u)q(x) = 0, q(u)(x,y) = 0");
    return *d;
}

Matrix euler_transformation(const QuadraticModule& m, const EulerData& d) {
    Vec w = add(d.x, scale(m.eval_q(d.x), d.u));
    return map_from_images(m, [&](const Vec& y) {
        return sub(add(y, scale(m.eval_pair(d.x, y), d.u)), scale(m.eval_pair(d.u, y), w));
    });
}

bool euler_det_condition(const QuadraticModule& m, const EulerData& d) {
    RingElement c = m.eval_q(d.u) * m.eval_q(d.x);
    for (const RingElement& p : m.pairing_row(d.u))
        if (!(c * p).is_zero()) return false;
    return true;
}

Matrix transvection(const QuadraticModule& m, const Vec& z, const Vec& t) {
    return map_from_images(m, [&](const Vec& y) { return add(y, scale(m.eval_pair(t, y), z)); });
}

RingElement transvection_det(const QuadraticModule& m, const Vec& z, const Vec& t) {
    return m.ring().one() + m.eval_pair(z, t);
}

Matrix scaled_summand_map(const QuadraticModule& m, const std::vector<size_t>& n_basis, const RingElement& delta) {
    const Ring& r = m.ring();
    size_t n = m.rank();
    require(in_mu2(delta), "delta is not in mu_2(R)");
    std::vector<bool> inN(n, false);
    for (size_t i : n_basis) {
        require(i < n, "basis index out of range");
        inN[i] = true;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (inN[i] && !inN[j]) require(m.gram().at(i, j).is_zero(), "N and L are not orthogonal");
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = i;
    for (const Vec& v : nullspace(submatrix(m.gram(), all, n_basis)))
        require(is_zero(v), "N meets M^perp");
    Matrix A = Matrix::identity(r, n);
    for (size_t i : n_basis) A.at(i, i) = delta;
    return A;
}

bool relation_orthogonal_sum(const QuadraticModule& m, const ReflectionData& dx, const ReflectionData& dy) {
    require((dx.e * dy.e).is_zero(), "idempotents are not orthogonal");
    ReflectionData dxy = reflection_data(m, dx.e + dy.e, add(dx.x, dy.x));
    return e_reflection(m, dx) * e_reflection(m, dy) == e_reflection(m, dxy);
}

bool relation_restriction(const QuadraticModule& m, const ReflectionData& d, const RingElement& eps) {
    require(is_idempotent(eps), "epsilon is not idempotent");
    ReflectionData de = reflection_data(m, eps * d.e, scale(eps, d.x));
    Matrix rx = e_reflection(m, d), re = e_reflection(m, de);
    RingElement co = m.ring().one() - eps;
    for (size_t j = 0; j < m.rank(); ++j) {
        Vec y = unit_vec(m.ring(), m.rank(), j);
        Vec ey = scale(eps, y), cy = scale(co, y);
        if (!vec_eq(re * ey, rx * ey) || !vec_eq(re * cy, cy)) return false;
    }
    return true;
}

bool relation_idempotent_sum(const QuadraticModule& m, const ReflectionData& d, const RingElement& eps1,
                             const RingElement& eps2) {
    require(is_idempotent(eps1) && is_idempotent(eps2), "epsilon is not idempotent");
    auto refl = [&](const RingElement& eps) {
        return e_reflection(m, reflection_data(m, eps * d.e, scale(eps, d.x)));
    };
    return refl(eps1) * refl(eps2) == refl(idem_add(eps1, eps2));
}

bool relation_euler_scaling(const QuadraticModule& m, const EulerData& d, const RingElement& a) {
    return euler_transformation(m, euler_data(m, scale(a, d.u), d.x)) ==
           euler_transformation(m, euler_data(m, d.u, scale(a, d.x)));
}

bool relation_euler_additive(const QuadraticModule& m, const Vec& u, const Vec& x, const Vec& z) {
    EulerData dx = euler_data(m, u, x), dz = euler_data(m, u, z);
    return euler_transformation(m, dx) * euler_transformation(m, dz) ==
           euler_transformation(m, euler_data(m, u, add(x, z)));
}

bool relation_euler_exchange(const QuadraticModule& m, const Vec& u, const Vec& v, const Vec& x) {
    EulerData dux = euler_data(m, u, x);
    RingElement qx = m.eval_q(x), qv = m.eval_q(v);
    require(m.eval_pair(u, v).is_zero() && m.eval_pair(v, x).is_zero() && (qv * qx).is_zero(),
            "need (u,v) = (v,x) = q(v)q(x) = 0");
    for (const RingElement& c : m.pairing_row(x)) require((qv * c).is_zero(), "need q(v)(x,y) = 0");
    Matrix lhs = euler_transformation(m, dux) * euler_transformation(m, euler_data(m, v, x));
    Matrix rhs = euler_transformation(m, euler_data(m, scale(qx, v), u)) *
                 euler_transformation(m, euler_data(m, add(u, v), x));
    return lhs == rhs;
}

bool relation_mref(const QuadraticModule& m, const ReflectionData& d, const Vec& u) {
    require(in_perp(m, u), "u is not in M^perp");
    require((d.e * m.eval_q(u)).is_zero(), "need e q(u) = 0");
    Vec x2 = sub(d.x, scale(m.eval_q(d.x), u));
    ReflectionData d2 = reflection_data(m, d.e, x2);
    Matrix lhs = e_reflection(m, d) * e_reflection(m, d2);
    Matrix direct = map_from_images(m, [&](const Vec& y) { return add(y, scale(m.eval_pair(d.x, y), u)); });
    auto de = try_euler_data(m, u, d.x);
    return lhs == direct && de && euler_transformation(m, *de) == direct;
}

std::vector<OrthogonalMap> enumerate_orthogonal(const QuadraticModule& m, Restrict restrict, uint64_t budget) {
    const Ring& r = m.ring();
    if (!r.is_finite()) throw NotComputable("enumeration needs a finite ring");
    size_t n = m.rank();
    std::vector<Vec> vectors = all_vectors(r, n, budget);
    std::vector<std::vector<Vec>> cand(n);
    for (size_t j = 0; j < n; ++j)
        for (const Vec& v : vectors)
            if (m.eval_q(v) == m.qdiag()[j]) cand[j].push_back(v);

    std::vector<Vec> perp;
    if (restrict == Restrict::TrivialOnPerp) perp = kernel_perp(m).perp;

    std::vector<OrthogonalMap> out;
    std::vector<Vec> cols(n);
    uint64_t nodes = 0;
    std::function<void(size_t)> rec = [&](size_t j) {
        if (j == n) {
            Matrix A = Matrix::from_columns(r, n, cols);
            for (const Vec& v : perp)
                if (!vec_eq(A * v, v)) return;
            out.push_back(make_map(A));
            return;
        }
        for (const Vec& v : cand[j]) {
            if (++nodes > budget) throw BudgetExceeded("orthogonal enumeration exceeded " + std::to_string(budget) + " nodes");
            bool ok = true;
            for (size_t i = 0; i < j && ok; ++i) ok = m.eval_pair(cols[i], v) == m.gram().at(i, j);
            if (!ok) continue;
            cols[j] = v;
            rec(j + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), [](const OrthogonalMap& a, const OrthogonalMap& b) { return a.mat < b.mat; });
    return out;
}

bool CheckList::all_passed() const {
    if (!available) return false;
    for (const auto& [name, ok] : checks)
        if (!ok) return false;
    return true;
}

SequenceReport sequence_checks(const QuadraticModule& m, uint64_t budget) {
    SequenceReport rep;
    const Ring& r = m.ring();
    if (!r.is_finite()) {
        rep.available = false;
        rep.reason = "ring is not finite";
        return rep;
    }
    std::string why;
    auto split = split_quadratic_kernel(m, &why);
    if (!split) {
        rep.available = false;
        rep.reason = "no basis-split M_q^perp: " + why;
        return rep;
    }
    const KernelSplitting& s = *split;
    const auto& K = s.killed;
    const auto& L = s.kept;
    auto add_check = [&](const std::string& name, bool ok) { rep.checks.emplace_back(name, ok); };

    std::vector<OrthogonalMap> group;
    for (OrthogonalMap& phi : enumerate_orthogonal(m, Restrict::All, budget))
        if (phi.bijective) group.push_back(std::move(phi));
    rep.group_size = group.size();

    // (i) restriction to M_q^⊥ and reduction to M̄.
    std::vector<Matrix> homs = all_matrices(r, K.size(), L.size(), budget);
    std::set<Matrix> expected_kernel;
    bool all_orth = true, additive = true;
    for (const Matrix& psi : homs) {
        Matrix g = Matrix::identity(r, m.rank()) + embed_hom(s, psi);
        all_orth = all_orth && is_orthogonal(m, g);
        expected_kernel.insert(g);
    }
    for (const Matrix& p1 : homs)
        for (const Matrix& p2 : homs) {
            Matrix g1 = Matrix::identity(r, m.rank()) + embed_hom(s, p1);
            Matrix g2 = Matrix::identity(r, m.rank()) + embed_hom(s, p2);
            if (g1 * g2 != Matrix::identity(r, m.rank()) + embed_hom(s, p1 + p2)) additive = false;
        }
    std::set<Matrix> kernel;
    std::set<std::pair<Matrix, Matrix>> image;
    bool preserves = true;
    for (const OrthogonalMap& phi : group) {
        Matrix B = s.Uinv * phi.mat * s.U;
        for (size_t i : L)
            for (size_t j : K) preserves = preserves && B.at(i, j).is_zero();
        Matrix BK = submatrix(B, K, K), BL = submatrix(B, L, L);
        image.emplace(BK, BL);
        if (BK.is_identity() && BL.is_identity()) kernel.insert(phi.mat);
    }
    rep.kernel_size = kernel.size();
    size_t gl = 0;
    for (const Matrix& g : all_matrices(r, K.size(), K.size(), budget))
        if (determinant(g).try_invert()) ++gl;
    size_t obar = 0;
    for (const OrthogonalMap& phi : enumerate_orthogonal(s.quotient, Restrict::All, budget)) obar += phi.bijective;
    add_check("orthogonal maps preserve M_q^perp", preserves);
    add_check("Id + psi~ is orthogonal for every psi in Hom(Mbar, M_q^perp)", all_orth);
    add_check("kernel of O(M,q) -> GL(M_q^perp) x O(Mbar) is {Id + psi~}", kernel == expected_kernel);
    add_check("(Id + psi1~)(Id + psi2~) = Id + (psi1 + psi2)~", additive);
    add_check("restriction map is onto GL(M_q^perp) x O(Mbar)", image.size() == gl * obar);
    add_check("|O(M,q)| = |Hom| * |GL(M_q^perp)| * |O(Mbar)|", group.size() == expected_kernel.size() * gl * obar);

    // (ii) maps fixing M^⊥ pointwise.
    std::vector<Vec> perp = kernel_perp(m).perp;
    std::set<Matrix> perp_kernel, expected_perp_kernel;
    std::set<Matrix> perp_images;
    for (const OrthogonalMap& phi : enumerate_orthogonal(m, Restrict::TrivialOnPerp, budget)) {
        if (!phi.bijective) continue;
        ++rep.perp_group_size;
        Matrix B = s.Uinv * phi.mat * s.U;
        Matrix BL = submatrix(B, L, L);
        perp_images.insert(BL);
        if (BL.is_identity()) perp_kernel.insert(phi.mat);
    }
    for (const Matrix& psi : homs) {
        Matrix h = embed_hom(s, psi);
        bool kills = true;
        for (const Vec& v : perp) kills = kills && is_zero(h * v);
        if (kills) expected_perp_kernel.insert(Matrix::identity(r, m.rank()) + h);
    }
    rep.perp_kernel_size = perp_kernel.size();
    add_check("kernel of O_{M^perp} -> O(Mbar) is Hom(Mbar_sigma, M_q^perp)", perp_kernel == expected_perp_kernel);

    // (iii) the Euler map on M x M_q^⊥.
    std::vector<Vec> us = enumerate_span(r, m.rank(), kernel_perp(m).qperp, budget);
    std::vector<Vec> xs = all_vectors(r, m.rank(), budget);
    if (us.size() * xs.size() * xs.size() > budget) throw BudgetExceeded("Euler map check exceeds budget");
    std::map<std::pair<size_t, size_t>, Matrix> E;
    bool defined = true, formula = true, in_kernel = true;
    for (size_t a = 0; a < us.size(); ++a)
        for (size_t b = 0; b < xs.size(); ++b) {
            auto d = try_euler_data(m, us[a], xs[b]);
            if (!d) {
                defined = false;
                continue;
            }
            Matrix g = euler_transformation(m, *d);
            Matrix direct = map_from_images(m, [&](const Vec& y) { return add(y, scale(m.eval_pair(xs[b], y), us[a])); });
            formula = formula && g == direct;
            in_kernel = in_kernel && perp_kernel.count(g) > 0;
            E.emplace(std::make_pair(a, b), g);
        }
    bool add_x = true, add_u = true, factors = true;
    if (defined) {
        auto index_of = [](const std::vector<Vec>& list, const Vec& v) {
            return size_t(std::lower_bound(list.begin(), list.end(), v, vec_less) - list.begin());
        };
        for (size_t a = 0; a < us.size(); ++a)
            for (size_t b = 0; b < xs.size(); ++b)
                for (size_t c = 0; c < xs.size(); ++c)
                    if (E.at({a, b}) * E.at({a, c}) != E.at({a, index_of(xs, add(xs[b], xs[c]))})) add_x = false;
        for (size_t a = 0; a < us.size(); ++a)
            for (size_t a2 = 0; a2 < us.size(); ++a2)
                for (size_t b = 0; b < xs.size(); ++b)
                    if (E.at({a, b}) * E.at({a2, b}) != E.at({index_of(us, add(us[a], us[a2])), b})) add_u = false;
        for (size_t a = 0; a < us.size(); ++a)
            for (size_t b = 0; b < xs.size(); ++b)
                for (const Vec& w : perp)
                    if (E.at({a, b}) != E.at({a, index_of(xs, add(xs[b], w))})) factors = false;
    }
    add_check("E_{u,x} defined for u in M_q^perp, x in M", defined);
    add_check("E_{u,x}(y) = y + (x,y)u", formula);
    add_check("E_{u,x} lies in the kernel of O_{M^perp} -> O(Mbar)", in_kernel);
    add_check("E_{u,x+z} = E_{u,x} E_{u,z}", defined && add_x);
    add_check("E_{u+v,x} = E_{u,x} E_{v,x}", defined && add_u);
    add_check("E_{u,x} depends on x modulo M^perp", defined && factors);
    return rep;
}

AllMqReport conjecture_allmq_search(const QuadraticModule& m, uint64_t budget) {
    AllMqReport rep;
    for (const OrthogonalMap& phi : enumerate_orthogonal(m, Restrict::TrivialOnPerp, budget)) {
        ++rep.searched;
        if (!phi.bijective) rep.counterexamples.push_back(phi.mat);
    }
    return rep;
}

std::vector<ReflectionData> admissible_reflections(const QuadraticModule& m, const RingElement& e, uint64_t budget) {
    require(is_idempotent(e), "e is not idempotent");
    std::vector<ReflectionData> out;
    for (const Vec& x : all_vectors(m.ring(), m.rank(), budget))
        if (auto d = try_reflection_data(m, e, x)) out.push_back(*d);
    return out;
}

}  // namespace cliffring
