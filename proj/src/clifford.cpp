#include "cliffring/clifford.hpp"

#include <bit>
#include <cctype>

namespace cliffring {

namespace {

constexpr size_t kProductTableRank = 7;

int top_bit(uint32_t m) { return 31 - std::countl_zero(m); }

// Dense accumulator over 2ⁿ masks.
struct Acc {
    std::vector<RingElement> c;
    Acc(const Ring& r, uint32_t dim) : c(dim, r.zero()) {}
    void add(const Terms& t, const RingElement& k) {
        for (auto& [m, v] : t) c[m] += k * v;
    }
};

Terms sparse(const std::vector<RingElement>& c) {
    Terms t;
    for (uint32_t m = 0; m < c.size(); ++m)
        if (!c[m].is_zero()) t.emplace_back(m, c[m]);
    return t;
}

}  // namespace

CliffordElement::CliffordElement(AlgebraPtr alg, std::vector<RingElement> coeffs)
    : alg_(std::move(alg)), c_(std::move(coeffs)) {
    if (c_.size() != alg_->dim()) throw Error("coefficient vector has wrong length");
}

const Ring& CliffordElement::ring() const { return alg_->ring(); }
size_t CliffordElement::rank() const { return alg_->rank(); }

void require_same_algebra(const CliffordElement& a, const CliffordElement& b) {
    if (!a.algebra_ptr() || !b.algebra_ptr() || !a.algebra().same_as(b.algebra()))
        throw DescriptorMismatch("elements belong to different Clifford algebras");
}

CliffordElement CliffordElement::operator+(const CliffordElement& b) const {
    require_same_algebra(*this, b);
    auto c = c_;
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
    return {alg_, std::move(c)};
}

CliffordElement CliffordElement::operator-(const CliffordElement& b) const {
    require_same_algebra(*this, b);
    auto c = c_;
    for (size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
    return {alg_, std::move(c)};
}

CliffordElement CliffordElement::operator-() const {
    auto c = c_;
    for (auto& x : c) x = -x;
    return {alg_, std::move(c)};
}

CliffordElement CliffordElement::operator*(const CliffordElement& b) const { return mul(*this, b); }

CliffordElement CliffordElement::scaled(const RingElement& a) const {
    auto c = c_;
    for (auto& x : c) x = a * x;
    return {alg_, std::move(c)};
}

CliffordElement CliffordElement::even_part() const {
    auto c = c_;
    for (uint32_t m = 0; m < c.size(); ++m)
        if (std::popcount(m) % 2) c[m] = ring().zero();
    return {alg_, std::move(c)};
}

CliffordElement CliffordElement::odd_part() const {
    auto c = c_;
    for (uint32_t m = 0; m < c.size(); ++m)
        if (std::popcount(m) % 2 == 0) c[m] = ring().zero();
    return {alg_, std::move(c)};
}

bool CliffordElement::is_zero() const {
    for (auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool CliffordElement::is_scalar() const {
    for (size_t m = 1; m < c_.size(); ++m)
        if (!c_[m].is_zero()) return false;
    return true;
}

bool CliffordElement::operator==(const CliffordElement& b) const {
    require_same_algebra(*this, b);
    return c_ == b.c_;
}

bool CliffordElement::operator<(const CliffordElement& b) const {
    for (size_t m = 0; m < c_.size(); ++m) {
        if (c_[m] < b.c_[m]) return true;
        if (b.c_[m] < c_[m]) return false;
    }
    return false;
}

std::string CliffordElement::to_string() const {
    std::string out;
    for (uint32_t m = 0; m < c_.size(); ++m) {
        if (c_[m].is_zero()) continue;
        std::string s = c_[m].to_string();
        bool neg = false;
        if (s.size() > 1 && s[0] == '-' && s.find(' ') == std::string::npos) {
            neg = true;
            s = s.substr(1);
        } else if (s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos) {
            s = "(" + s + ")";
        }
        std::string body;
        if (m == 0) {
            body = s;
        } else {
            std::string mono = "e{";
            bool first = true;
            for (size_t i = 0; i < rank(); ++i)
                if (m >> i & 1) {
                    if (!first) mono += ",";
                    mono += std::to_string(i + 1);
                    first = false;
                }
            mono += "}";
            body = s == "1" ? mono : s + "*" + mono;
        }
        if (out.empty())
            out = neg ? "-" + body : body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

CliffordAlgebra::CliffordAlgebra(const QuadraticModule& m) : module_(m) {
    if (m.rank() > kMaxCliffordRank)
        throw PreconditionFailed("rank " + std::to_string(m.rank()) + " exceeds the limit of " +
                                 std::to_string(kMaxCliffordRank));
}

AlgebraPtr CliffordAlgebra::create(const QuadraticModule& m) { return std::make_shared<const CliffordAlgebra>(m); }

CliffordElement CliffordAlgebra::zero() const {
    return CliffordElement(shared_from_this(), std::vector<RingElement>(dim(), ring().zero()));
}

CliffordElement CliffordAlgebra::scalar(const RingElement& a) const {
    if (a.ring_ptr() != &ring()) throw DescriptorMismatch("scalar from another ring");
    std::vector<RingElement> c(dim(), ring().zero());
    c[0] = a;
    return CliffordElement(shared_from_this(), std::move(c));
}

CliffordElement CliffordAlgebra::one() const { return scalar(ring().one()); }

CliffordElement CliffordAlgebra::basis(uint32_t mask) const {
    if (mask >= dim()) throw Error("basis mask out of range");
    std::vector<RingElement> c(dim(), ring().zero());
    c[mask] = ring().one();
    return CliffordElement(shared_from_this(), std::move(c));
}

CliffordElement CliffordAlgebra::generator(size_t i) const {
    if (i >= rank()) throw Error("generator index out of range");
    return basis(uint32_t(1) << i);
}

CliffordElement CliffordAlgebra::from_vector(const Vec& v) const {
    if (v.size() != rank()) throw Error("vector length mismatch");
    std::vector<RingElement> c(dim(), ring().zero());
    for (size_t i = 0; i < rank(); ++i) c[uint32_t(1) << i] = v[i];
    return CliffordElement(shared_from_this(), std::move(c));
}

CliffordElement CliffordAlgebra::from_paravector(const Vec& av) const {
    if (av.size() != rank() + 1) throw Error("paravector length mismatch");
    std::vector<RingElement> c(dim(), ring().zero());
    c[0] = av[0];
    for (size_t i = 0; i < rank(); ++i) c[uint32_t(1) << i] = av[i + 1];
    return CliffordElement(shared_from_this(), std::move(c));
}

CliffordElement CliffordAlgebra::from_vec(const Vec& v) const { return CliffordElement(shared_from_this(), v); }

void CliffordAlgebra::build_generator_table() const {
    std::call_once(gen_once_, [this] {
        const size_t n = rank();
        const Ring& R = ring();
        gen_table_.assign(size_t(dim()) * n, Terms{});
        // Increasing I: x_I x_i only refers to x_{I'} x_i with I' ⊂ I.
        for (uint32_t I = 0; I < dim(); ++I)
            for (size_t i = 0; i < n; ++i) {
                Terms& out = gen_table_[size_t(I) * n + i];
                const uint32_t bit = uint32_t(1) << i;
                if (I == 0 || int(i) > top_bit(I)) {
                    out = {{I | bit, R.one()}};
                    continue;
                }
                const int last = top_bit(I);
                const uint32_t Ip = I ^ (uint32_t(1) << last);
                if (int(i) == last) {
                    if (!module_.qdiag()[i].is_zero()) out = {{Ip, module_.qdiag()[i]}};
                    continue;
                }
                // x_{I'} x_last x_i = g(i,last) x_{I'} − (x_{I'} x_i) x_last.
                const RingElement& g = module_.gram().at(i, last);
                if (!g.is_zero()) out.emplace_back(Ip, g);
                for (auto& [K, c] : gen_table_[size_t(Ip) * n + i])
                    out.emplace_back(K | (uint32_t(1) << last), -c);
            }
    });
}

const Terms& CliffordAlgebra::right_generator(uint32_t I, size_t i) const {
    build_generator_table();
    return gen_table_[size_t(I) * rank() + i];
}

void CliffordAlgebra::build_product_table() const {
    std::call_once(prod_once_, [this] {
        build_generator_table();
        const uint32_t d = dim();
        prod_table_.assign(size_t(d) * d, Terms{});
        for (uint32_t I = 0; I < d; ++I) prod_table_[size_t(I) * d] = {{I, ring().one()}};
        for (uint32_t J = 1; J < d; ++J) {
            const int j = top_bit(J);
            const uint32_t Jp = J ^ (uint32_t(1) << j);
            for (uint32_t I = 0; I < d; ++I) {
                Acc acc(ring(), d);
                for (auto& [K, c] : prod_table_[size_t(I) * d + Jp]) acc.add(right_generator(K, j), c);
                prod_table_[size_t(I) * d + J] = sparse(acc.c);
            }
        }
    });
}

Terms CliffordAlgebra::basis_product(uint32_t I, uint32_t J) const {
    if (rank() <= kProductTableRank) {
        build_product_table();
        return prod_table_[size_t(I) * dim() + J];
    }
    Terms cur{{I, ring().one()}};
    for (size_t j = 0; j < rank(); ++j) {
        if (!(J >> j & 1)) continue;
        Acc acc(ring(), dim());
        for (auto& [K, c] : cur) acc.add(right_generator(K, j), c);
        cur = sparse(acc.c);
    }
    return cur;
}

CliffordElement CliffordAlgebra::parse(std::string_view text) const {
    auto fail = [&](size_t pos, const std::string& what) -> Error {
        return Error("parse error at column " + std::to_string(pos + 1) + ": " + what);
    };
    // Split on top-level + and −, keeping the sign with each term.
    struct Piece {
        size_t pos;
        bool neg;
        std::string_view s;
    };
    std::vector<Piece> pieces;
    int depth = 0;
    size_t start = 0;
    bool neg = false;
    auto flush = [&](size_t end) {
        std::string_view s = text.substr(start, end - start);
        size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
        return Piece{start + a, neg, s.substr(a, b - a)};
    };
    for (size_t k = 0; k < text.size(); ++k) {
        char ch = text[k];
        if (ch == '(' || ch == '{') ++depth;
        if (ch == ')' || ch == '}') {
            if (--depth < 0) throw fail(k, "unbalanced bracket");
        }
        if (depth == 0 && (ch == '+' || ch == '-')) {
            Piece p = flush(k);
            if (!p.s.empty()) {
                pieces.push_back(p);
                neg = false;
            } else if (!pieces.empty() || k > 0) {
                // Sign directly after another operator or at the start.
                std::string_view before = text.substr(0, k);
                size_t last = before.find_last_not_of(" \t");
                if (last != std::string_view::npos && before[last] != '+' && before[last] != '-' &&
                    before[last] != '*')
                    throw fail(k, "unexpected operator");
            }
            if (ch == '-') neg = !neg;
            start = k + 1;
        }
    }
    if (depth != 0) throw fail(text.size(), "unbalanced bracket");
    Piece tail = flush(text.size());
    if (tail.s.empty()) throw fail(text.size(), "expected a term");
    pieces.push_back(tail);

    CliffordElement acc = zero();
    for (auto& p : pieces) {
        // A term is a product of factors: ring elements and monomials e{...}.
        CliffordElement term = one();
        std::string_view s = p.s;
        size_t k = 0;
        while (k <= s.size()) {
            size_t e = k;
            int d = 0;
            while (e < s.size() && !(d == 0 && s[e] == '*')) {
                if (s[e] == '(' || s[e] == '{') ++d;
                if (s[e] == ')' || s[e] == '}') --d;
                ++e;
            }
            std::string_view f = s.substr(k, e - k);
            size_t a = f.find_first_not_of(" \t"), b = f.find_last_not_of(" \t");
            if (a == std::string_view::npos) throw fail(p.pos + k, "empty factor");
            const size_t fpos = p.pos + k + a;
            f = f.substr(a, b - a + 1);
            if (f.rfind("e{", 0) == 0) {
                if (f.back() != '}') throw fail(fpos, "malformed monomial");
                std::string_view idx = f.substr(2, f.size() - 3);
                size_t t = 0;
                while (t < idx.size()) {
                    while (t < idx.size() && (idx[t] == ' ' || idx[t] == ',')) ++t;
                    if (t >= idx.size()) break;
                    size_t u = t;
                    while (u < idx.size() && std::isdigit(static_cast<unsigned char>(idx[u]))) ++u;
                    if (u == t) throw fail(fpos + 2 + t, "expected a generator index");
                    long v = std::stol(std::string(idx.substr(t, u - t)));
                    if (v < 1 || size_t(v) > rank())
                        throw fail(fpos + 2 + t, "generator index " + std::to_string(v) + " out of range 1.." +
                                                     std::to_string(rank()));
                    term = term * generator(size_t(v - 1));
                    t = u;
                }
            } else {
                if (f.find('{') != std::string_view::npos || f.find('}') != std::string_view::npos)
                    throw fail(fpos, "malformed monomial");
                try {
                    term = term.scaled(ring().parse_element(f));
                } catch (const Error& err) {
                    throw fail(fpos, std::string("bad coefficient: ") + err.what());
                }
            }
            k = e + 1;
        }
        acc = p.neg ? acc - term : acc + term;
    }
    return acc;
}

// ---------------------------------------------------------------------------

CliffordElement mul(const CliffordElement& a, const CliffordElement& b) {
    require_same_algebra(a, b);
    const CliffordAlgebra& alg = a.algebra();
    const uint32_t d = alg.dim();
    Acc acc(alg.ring(), d);
    for (uint32_t I = 0; I < d; ++I) {
        if (a.coeff(I).is_zero()) continue;
        for (uint32_t J = 0; J < d; ++J) {
            if (b.coeff(J).is_zero()) continue;
            acc.add(alg.basis_product(I, J), a.coeff(I) * b.coeff(J));
        }
    }
    return CliffordElement(a.algebra_ptr(), std::move(acc.c));
}

RingElement sign_constant(const CliffordAlgebra& alg, uint32_t I, size_t i) {
    const Ring& R = alg.ring();
    int larger = std::popcount(I >> (i + 1));
    RingElement b = larger % 2 ? -R.one() : R.one();
    if (I >> i & 1) b *= alg.module().qdiag()[i];
    return b;
}

namespace {

void require_orthogonal(const CliffordAlgebra& alg) {
    if (!alg.module().is_orthogonal_basis())
        throw PreconditionFailed("fast generator product needs an orthogonal basis");
}

}  // namespace

CliffordElement mul_generator_fast(const CliffordElement& a, size_t i) {
    const CliffordAlgebra& alg = a.algebra();
    require_orthogonal(alg);
    if (i >= alg.rank()) throw Error("generator index out of range");
    std::vector<RingElement> c(alg.dim(), alg.ring().zero());
    const uint32_t bit = uint32_t(1) << i;
    for (uint32_t I = 0; I < alg.dim(); ++I)
        if (!a.coeff(I).is_zero()) c[I ^ bit] += a.coeff(I) * sign_constant(alg, I, i);
    return CliffordElement(a.algebra_ptr(), std::move(c));
}

CliffordElement mul_generator_fast_left(size_t i, const CliffordElement& a) {
    const CliffordAlgebra& alg = a.algebra();
    require_orthogonal(alg);
    if (i >= alg.rank()) throw Error("generator index out of range");
    std::vector<RingElement> c(alg.dim(), alg.ring().zero());
    const uint32_t bit = uint32_t(1) << i;
    for (uint32_t I = 0; I < alg.dim(); ++I) {
        if (a.coeff(I).is_zero()) continue;
        RingElement b = sign_constant(alg, I, i);
        if (std::popcount(I & ~bit) % 2) b = -b;
        c[I ^ bit] += a.coeff(I) * b;
    }
    return CliffordElement(a.algebra_ptr(), std::move(c));
}

CliffordElement grade_involution(const CliffordElement& a) {
    auto c = a.coeffs();
    for (uint32_t m = 0; m < c.size(); ++m)
        if (std::popcount(m) % 2) c[m] = -c[m];
    return CliffordElement(a.algebra_ptr(), std::move(c));
}

CliffordElement transpose(const CliffordElement& a) {
    const CliffordAlgebra& alg = a.algebra();
    std::call_once(alg.trans_once_, [&alg] {
        const uint32_t d = alg.dim();
        alg.trans_table_.assign(d, Terms{});
        for (uint32_t I = 0; I < d; ++I) {
            // Reverse word: x_{i_k} · … · x_{i_1}.
            Terms cur{{0, alg.ring().one()}};
            for (int i = int(alg.rank()) - 1; i >= 0; --i) {
                if (!(I >> i & 1)) continue;
                Acc acc(alg.ring(), d);
                for (auto& [K, c] : cur) acc.add(alg.right_generator(K, size_t(i)), c);
                cur = sparse(acc.c);
            }
            alg.trans_table_[I] = std::move(cur);
        }
    });
    Acc acc(alg.ring(), alg.dim());
    for (uint32_t I = 0; I < alg.dim(); ++I)
        if (!a.coeff(I).is_zero()) acc.add(alg.trans_table_[I], a.coeff(I));
    return CliffordElement(a.algebra_ptr(), std::move(acc.c));
}

CliffordElement clifford_involution(const CliffordElement& a) { return transpose(grade_involution(a)); }

CliffordElement norm(const CliffordElement& a) { return a * clifford_involution(a); }

CliffordElement power(const CliffordElement& a, unsigned k) {
    CliffordElement r = a.algebra().one();
    for (unsigned t = 0; t < k; ++t) r = r * a;
    return r;
}

Matrix left_mul_matrix(const CliffordElement& a) {
    const CliffordAlgebra& alg = a.algebra();
    Matrix L(alg.ring(), alg.dim(), alg.dim());
    for (uint32_t J = 0; J < alg.dim(); ++J) {
        CliffordElement col = a * alg.basis(J);
        for (uint32_t I = 0; I < alg.dim(); ++I) L.at(I, J) = col.coeff(I);
    }
    return L;
}

Matrix right_mul_matrix(const CliffordElement& a) {
    const CliffordAlgebra& alg = a.algebra();
    Matrix L(alg.ring(), alg.dim(), alg.dim());
    for (uint32_t J = 0; J < alg.dim(); ++J) {
        CliffordElement col = alg.basis(J) * a;
        for (uint32_t I = 0; I < alg.dim(); ++I) L.at(I, J) = col.coeff(I);
    }
    return L;
}

std::optional<CliffordElement> invert(const CliffordElement& a) {
    const CliffordAlgebra& alg = a.algebra();
    auto sol = solve_linear(left_mul_matrix(a), alg.one().coeffs());
    if (!sol) return std::nullopt;
    CliffordElement b = alg.from_vec(*sol);
    if (!(a * b == alg.one()) || !(b * a == alg.one())) return std::nullopt;
    return b;
}

std::vector<CliffordElement> fixed_by_grade(const CliffordAlgebra& alg) {
    std::vector<CliffordElement> gens;
    auto torsion = alg.ring().two_torsion_generators();
    for (uint32_t I = 0; I < alg.dim(); ++I) {
        if (std::popcount(I) % 2 == 0) {
            gens.push_back(alg.basis(I));
            continue;
        }
        for (auto& t : torsion)
            if (!t.is_zero()) gens.push_back(alg.basis(I).scaled(t));
    }
    return gens;
}

CliffordElement AlgebraHom::operator()(const CliffordElement& a) const {
    if (!a.algebra().same_as(*source)) throw DescriptorMismatch("element is not in the source algebra");
    CliffordElement out = target->zero();
    for (uint32_t I = 0; I < source->dim(); ++I)
        if (!a.coeff(I).is_zero()) out = out + basis_images[I].scaled(a.coeff(I));
    return out;
}

AlgebraHom algebra_hom(AlgebraPtr source, AlgebraPtr target, std::vector<CliffordElement> images) {
    if (&source->ring() != &target->ring()) throw DescriptorMismatch("algebras over different rings");
    const size_t n = source->rank();
    if (images.size() != n) throw Error("need one image per generator");
    for (auto& im : images)
        if (!im.algebra().same_as(*target)) throw DescriptorMismatch("image outside the target algebra");
    const auto& m = source->module();
    for (size_t i = 0; i < n; ++i) {
        if (images[i] * images[i] != target->scalar(m.qdiag()[i]))
            throw PreconditionFailed("generator images violate x_i² = q_i");
        for (size_t j = i + 1; j < n; ++j)
            if (images[i] * images[j] + images[j] * images[i] != target->scalar(m.gram().at(i, j)))
                throw PreconditionFailed("generator images violate x_i x_j + x_j x_i = (x_i, x_j)");
    }
    AlgebraHom h{source, target, std::move(images), {}};
    h.basis_images.reserve(source->dim());
    for (uint32_t I = 0; I < source->dim(); ++I) {
        CliffordElement p = target->one();
        for (size_t i = 0; i < n; ++i)
            if (I >> i & 1) p = p * h.images[i];
        h.basis_images.push_back(p);
    }
    return h;
}

RadicalQuotient radical_quotient_map(const AlgebraPtr& alg) {
    std::string reason;
    auto split = split_quadratic_kernel(alg->module(), &reason);
    if (!split) throw PreconditionFailed("splitting not available: " + reason);
    AlgebraPtr target = CliffordAlgebra::create(split->quotient);
    const Ring& R = alg->ring();
    std::vector<CliffordElement> images;
    for (size_t i = 0; i < alg->rank(); ++i) {
        // Old x_i in adapted coordinates, then drop the killed part.
        Vec v(split->kept.size(), R.zero());
        for (size_t p = 0; p < split->kept.size(); ++p) v[p] = split->Uinv.at(split->kept[p], i);
        images.push_back(target->from_vector(v));
    }
    RadicalQuotient rq{*split, algebra_hom(alg, target, std::move(images))};
    return rq;
}

}  // namespace cliffring
