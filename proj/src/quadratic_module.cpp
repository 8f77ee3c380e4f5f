#include "cliffring/quadratic_module.hpp"

#include <algorithm>

namespace cliffring {

QuadraticModule::QuadraticModule(const Ring& r, Vec qdiag, Matrix gram)
    : ring_(&r), qdiag_(std::move(qdiag)), gram_(std::move(gram)) {
    const size_t n = qdiag_.size();
    if (gram_.rows() != n || gram_.cols() != n) throw Error("rank-mismatch: gram must be " + std::to_string(n) + "x" + std::to_string(n));
    for (auto& q : qdiag_)
        if (q.ring_ptr() != ring_) throw DescriptorMismatch("qdiag ring mismatch");
    if (n && &gram_.ring() != ring_) throw DescriptorMismatch("gram ring mismatch");
    for (size_t i = 0; i < n; ++i) {
        if (gram_.at(i, i) != qdiag_[i].scaled(2))
            throw Error("gram-diagonal-mismatch: gram[" + std::to_string(i) + "][" + std::to_string(i) +
                        "] must equal 2*qdiag[" + std::to_string(i) + "]");
        for (size_t j = i + 1; j < n; ++j)
            if (gram_.at(i, j) != gram_.at(j, i)) throw Error("gram-not-symmetric: gram is not symmetric");
    }
}

QuadraticModule QuadraticModule::orthogonal(const Ring& r, const Vec& qdiag) {
    Matrix g(r, qdiag.size(), qdiag.size());
    for (size_t i = 0; i < qdiag.size(); ++i) g.at(i, i) = qdiag[i].scaled(2);
    return QuadraticModule(r, qdiag, g);
}

QuadraticModule QuadraticModule::diagonal(const Ring& r, const std::vector<int64_t>& qdiag) {
    Vec q;
    for (auto v : qdiag) q.push_back(r.from_int(v));
    return orthogonal(r, q);
}

QuadraticModule QuadraticModule::from_ints(const Ring& r, const std::vector<int64_t>& qdiag,
                                           const std::vector<std::vector<int64_t>>& gram) {
    Vec q;
    for (auto v : qdiag) q.push_back(r.from_int(v));
    if (gram.empty() && !qdiag.empty()) return orthogonal(r, q);
    return QuadraticModule(r, q, gram.empty() ? Matrix(r, 0, 0) : Matrix::from_ints(r, gram));
}

RingElement QuadraticModule::eval_q(const Vec& v) const {
    if (v.size() != rank()) throw Error("vector length mismatch");
    RingElement acc = ring_->zero();
    for (size_t i = 0; i < rank(); ++i) {
        if (v[i].ring_ptr() != ring_) throw DescriptorMismatch("vector ring mismatch");
        if (v[i].is_zero()) continue;
        acc += v[i] * v[i] * qdiag_[i];
        for (size_t j = i + 1; j < rank(); ++j) acc += v[i] * v[j] * gram_.at(i, j);
    }
    return acc;
}

RingElement QuadraticModule::eval_pair(const Vec& v, const Vec& w) const {
    if (v.size() != rank() || w.size() != rank()) throw Error("vector length mismatch");
    RingElement acc = ring_->zero();
    for (size_t i = 0; i < rank(); ++i) {
        if (v[i].is_zero()) continue;
        for (size_t j = 0; j < rank(); ++j) acc += v[i] * gram_.at(i, j) * w[j];
    }
    return acc;
}

Vec QuadraticModule::pairing_row(const Vec& v) const { return gram_.transpose() * v; }

bool QuadraticModule::is_orthogonal_basis() const {
    for (size_t i = 0; i < rank(); ++i)
        for (size_t j = 0; j < rank(); ++j)
            if (i != j && !gram_.at(i, j).is_zero()) return false;
    return true;
}

bool QuadraticModule::is_zero_form() const {
    for (size_t i = 0; i < rank(); ++i) {
        if (!qdiag_[i].is_zero()) return false;
        for (size_t j = 0; j < rank(); ++j)
            if (!gram_.at(i, j).is_zero()) return false;
    }
    return true;
}

std::string QuadraticModule::describe() const {
    std::string out = "ring=" + ring_->to_string() + " rank=" + std::to_string(rank()) + " qdiag=" +
                      cliffring::to_string(qdiag_);
    if (!is_orthogonal_basis()) out += " gram=" + gram_.to_string();
    return out;
}

bool QuadraticModule::operator==(const QuadraticModule& o) const {
    return ring_ == o.ring_ && qdiag_ == o.qdiag_ && gram_ == o.gram_;
}

std::string to_string(KernelData::Method m) {
    switch (m) {
        case KernelData::Method::Nullspace:
            return "nullspace";
        case KernelData::Method::Enumeration:
            return "enumeration";
        case KernelData::Method::TwoRegular:
            return "two-regular-identification";
    }
    return "?";
}

namespace {

// Greedy generating set of the listed elements of a submodule.
std::vector<Vec> reduce_generators(const Ring& r, size_t dim, const std::vector<Vec>& elems) {
    std::vector<Vec> gens;
    for (auto& v : elems) {
        if (is_zero(v)) continue;
        if (!in_span(r, dim, gens, v)) gens.push_back(v);
    }
    return gens;
}

}  // namespace

KernelData kernel_perp(const QuadraticModule& m) {
    const Ring& R = m.ring();
    KernelData kd;
    kd.perp = m.rank() ? nullspace(m.gram()) : std::vector<Vec>{};
    if (kd.perp.empty()) {
        kd.method = KernelData::Method::Nullspace;
        return kd;
    }
    if (R.is_two_regular()) {
        // 2q(v) = (v,v) = 0 forces q(v) = 0.
        kd.qperp = kd.perp;
        kd.method = KernelData::Method::TwoRegular;
        return kd;
    }
    if (!R.is_finite()) throw NotComputable("quadratic kernel over " + R.to_string() + " is not computable");
    std::vector<Vec> zeros;
    for (auto& v : enumerate_span(R, m.rank(), kd.perp))
        if (m.eval_q(v).is_zero()) zeros.push_back(v);
    kd.qperp = reduce_generators(R, m.rank(), zeros);
    kd.method = KernelData::Method::Enumeration;
    return kd;
}

bool in_perp(const QuadraticModule& m, const Vec& v) { return is_zero(m.pairing_row(v)); }

ParavectorModule paravector_extension(const QuadraticModule& m) {
    const Ring& R = m.ring();
    const size_t n = m.rank();
    Vec q{-R.one()};
    q.insert(q.end(), m.qdiag().begin(), m.qdiag().end());
    Matrix g(R, n + 1, n + 1);
    g.at(0, 0) = R.from_int(-2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g.at(i + 1, j + 1) = m.gram().at(i, j);
    return ParavectorModule{m, QuadraticModule(R, q, g)};
}

RingHom canonical_hom(const Ring& source, const Ring& target) {
    using K = RingDescriptor::Kind;
    const auto& d = source.descriptor();
    if (d.kind == K::Integers)
        return RingHom{&source, &target, [&target](const RingElement& a) { return target.from_int(a.coord(0)); }};
    if (d.kind == K::IntegersMod) {
        if (!target.from_int(d.modulus).is_zero())
            throw Error("embedding not well-defined: " + std::to_string(d.modulus) + " is nonzero in " +
                        target.to_string());
        return RingHom{&source, &target, [&target](const RingElement& a) { return target.from_int(a.coord(0)); }};
    }
    throw Error("no canonical homomorphism from " + source.to_string() + " to " + target.to_string());
}

RingHom quotient_hom(const Ring& source, const Ring& target, const RingElement& x_image) {
    if (source.descriptor().kind != RingDescriptor::Kind::QuotientPoly)
        throw Error("quotient_hom needs a quotient polynomial ring");
    if (x_image.ring_ptr() != &target) throw DescriptorMismatch("image of X lies in the wrong ring");
    RingHom base = canonical_hom(*source.base(), target);
    const auto& f = source.descriptor().poly;
    RingElement val = target.zero(), pw = target.one();
    for (size_t k = 0; k < f.size(); ++k) {
        val += pw.scaled(f[k]);
        pw *= x_image;
    }
    if (!val.is_zero()) throw Error("embedding not well-defined: modulus does not vanish at the image of X");
    const Ring* src = &source;
    return RingHom{&source, &target, [src, base, x_image, &target](const RingElement& a) {
                       const Ring* b = src->base();
                       RingElement acc = target.zero(), p = target.one();
                       for (int k = 0; k < src->degree(); ++k) {
                           RingElement c(b);
                           for (int i = 0; i < b->width(); ++i) c.coord(i) = a.coord(k * b->width() + i);
                           acc += base(c) * p;
                           p *= x_image;
                       }
                       return acc;
                   }};
}

RingHom projection_hom(const Ring& source, size_t factor) {
    if (source.descriptor().kind != RingDescriptor::Kind::Product || factor >= source.factors().size())
        throw Error("projection needs a product ring factor");
    const Ring* src = &source;
    return RingHom{&source, source.factors()[factor],
                   [src, factor](const RingElement& a) { return src->factor_component(a, factor); }};
}

QuadraticModule scalar_extension(const QuadraticModule& m, const RingHom& h) {
    if (h.source != &m.ring()) throw DescriptorMismatch("homomorphism source does not match module ring");
    const Ring& S = *h.target;
    Vec q;
    for (auto& a : m.qdiag()) q.push_back(h(a));
    Matrix g(S, m.rank(), m.rank());
    for (size_t i = 0; i < m.rank(); ++i)
        for (size_t j = 0; j < m.rank(); ++j) g.at(i, j) = h(m.gram().at(i, j));
    return QuadraticModule(S, q, g);
}

QuadraticModule change_basis(const QuadraticModule& m, const Matrix& U) {
    const Ring& R = m.ring();
    Vec q;
    for (size_t j = 0; j < U.cols(); ++j) q.push_back(m.eval_q(U.column(j)));
    return QuadraticModule(R, q, U.transpose() * m.gram() * U);
}

namespace {

QuadraticModule restrict_to(const QuadraticModule& m, const std::vector<size_t>& idx) {
    const Ring& R = m.ring();
    Vec q;
    Matrix g(R, idx.size(), idx.size());
    for (size_t a = 0; a < idx.size(); ++a) {
        q.push_back(m.qdiag()[idx[a]]);
        for (size_t b = 0; b < idx.size(); ++b) g.at(a, b) = m.gram().at(idx[a], idx[b]);
    }
    return QuadraticModule(R, q, g);
}

KernelSplitting finish(const QuadraticModule& m, Matrix U, std::vector<size_t> killed) {
    KernelSplitting s;
    auto inv = inverse(U);
    if (!inv) throw Error("internal: splitting basis is not unimodular");
    s.U = std::move(U);
    s.Uinv = *inv;
    s.killed = std::move(killed);
    for (size_t i = 0; i < m.rank(); ++i)
        if (std::find(s.killed.begin(), s.killed.end(), i) == s.killed.end()) s.kept.push_back(i);
    s.adapted = change_basis(m, s.U);
    s.quotient = restrict_to(s.adapted, s.kept);
    return s;
}

}  // namespace

std::optional<KernelSplitting> split_quadratic_kernel(const QuadraticModule& m, std::string* reason) {
    const Ring& R = m.ring();
    const size_t n = m.rank();
    KernelData kd;
    try {
        kd = kernel_perp(m);
    } catch (const NotComputable& e) {
        if (reason) *reason = e.what();
        return std::nullopt;
    }
    const auto& gens = kd.qperp;
    if (gens.empty()) return finish(m, Matrix::identity(R, n), {});

    // Spanned by a subset of the construction basis?
    std::vector<size_t> subset;
    std::vector<Vec> basis_part;
    for (size_t i = 0; i < n; ++i)
        if (in_span(R, n, gens, unit_vec(R, n, i))) {
            subset.push_back(i);
            basis_part.push_back(unit_vec(R, n, i));
        }
    if (same_span(R, n, gens, basis_part)) return finish(m, Matrix::identity(R, n), subset);

    // Otherwise a unimodular change of basis from the Smith form of the generators.
    auto sd = smith_decomposition(Matrix::from_columns(R, n, gens));
    if (!sd) {
        if (reason) *reason = "no basis-split form of the quadratic kernel over " + R.to_string();
        return std::nullopt;
    }
    size_t r = 0;
    while (r < std::min(sd->D.rows(), sd->D.cols()) && !sd->D.at(r, r).is_zero()) ++r;
    for (size_t t = 0; t < r; ++t)
        if (!sd->D.at(t, t).try_invert()) {
            if (reason) *reason = "quadratic kernel is not a direct summand spanned by basis vectors";
            return std::nullopt;
        }
    auto U = inverse(sd->P);
    if (!U) throw Error("internal: Smith transform not invertible");
    std::vector<size_t> killed;
    std::vector<Vec> cols;
    for (size_t t = 0; t < r; ++t) {
        killed.push_back(t);
        cols.push_back(U->column(t));
    }
    if (!same_span(R, n, gens, cols)) {
        if (reason) *reason = "quadratic kernel is not a direct summand spanned by basis vectors";
        return std::nullopt;
    }
    return finish(m, *U, killed);
}

}  // namespace cliffring
