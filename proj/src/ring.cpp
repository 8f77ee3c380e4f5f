#include "cliffring/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "cliffring/linalg.hpp"

namespace cliffring {

namespace {

int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in addition");
    return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in multiplication");
    return r;
}

int64_t reduce(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t reduce128(__int128 a, int64_t m) {
    auto r = static_cast<int64_t>(a % m);
    return r < 0 ? r + m : r;
}

std::string poly_to_string(const std::vector<int64_t>& p) {
    std::string out;
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
        int64_t c = p[k];
        if (c == 0) continue;
        std::string mono = k == 0 ? "" : (k == 1 ? "X" : "X^" + std::to_string(k));
        std::string mag = std::to_string(c < 0 ? -c : c);
        std::string term;
        if (mono.empty())
            term = mag;
        else if (mag == "1")
            term = mono;
        else
            term = mag + "*" + mono;
        if (out.empty())
            out = (c < 0 ? "-" : "") + term;
        else
            out += (c < 0 ? "-" : "+") + term;
    }
    return out.empty() ? "0" : out;
}

// Recursive-descent parser for ring descriptors.
class DescParser {
public:
    explicit DescParser(std::string_view s) : s_(s) {}

    RingDescriptor parse_all() {
        RingDescriptor d = product();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return d;
    }

private:
    std::string_view s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("ring descriptor: " + what + " at column " + std::to_string(pos_ + 1) + " in '" +
                    std::string(s_) + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    int64_t integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        try {
            return std::stoll(std::string(s_.substr(start, pos_ - start)));
        } catch (...) {
            fail("integer out of range");
        }
    }

    RingDescriptor product() {
        std::vector<RingDescriptor> parts{postfix()};
        while (true) {
            skip();
            if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == '*') ) {
                ++pos_;
                parts.push_back(postfix());
            } else {
                break;
            }
        }
        if (parts.size() == 1) return parts[0];
        return RingDescriptor::product(std::move(parts));
    }

    RingDescriptor postfix() {
        RingDescriptor d = atom();
        while (peek('[')) {
            ++pos_;
            expect('X');
            expect(']');
            expect('/');
            expect('(');
            auto p = polynomial();
            expect(')');
            try {
                d = RingDescriptor::quotient(std::move(d), std::move(p));
            } catch (const Error& e) {
                fail(e.what());
            }
        }
        return d;
    }

    RingDescriptor atom() {
        skip();
        if (peek('(')) {
            ++pos_;
            RingDescriptor d = product();
            expect(')');
            return d;
        }
        if (pos_ < s_.size() && s_[pos_] == 'Z') {
            ++pos_;
            if (peek('/')) {
                ++pos_;
                int64_t n = integer();
                if (n < 2) fail("modulus must be at least 2");
                return RingDescriptor::mod(n);
            }
            return RingDescriptor::integers();
        }
        if (pos_ < s_.size() && s_[pos_] == 'F') {
            ++pos_;
            if (peek('_')) ++pos_;
            int64_t p = integer();
            if (p < 2) fail("field size must be at least 2");
            for (int64_t d = 2; d * d <= p; ++d)
                if (p % d == 0) fail("only prime fields F_p are supported");
            return RingDescriptor::mod(p);
        }
        fail("expected ring");
    }

    // Integer polynomial in X, returned with ascending coefficients.
    std::vector<int64_t> polynomial() {
        std::map<int, int64_t> terms;
        bool first = true;
        while (true) {
            skip();
            int64_t sign = 1;
            if (peek('+') || peek('-')) {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            first = false;
            skip();
            int64_t coeff = 1;
            bool have_coeff = false;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                coeff = integer();
                have_coeff = true;
                if (peek('*')) ++pos_;
            }
            int deg = 0;
            if (peek('X')) {
                ++pos_;
                deg = 1;
                if (peek('^')) {
                    ++pos_;
                    deg = static_cast<int>(integer());
                }
            } else if (!have_coeff) {
                fail("expected polynomial term");
            }
            terms[deg] += sign * coeff;
        }
        int top = terms.empty() ? 0 : terms.rbegin()->first;
        std::vector<int64_t> p(top + 1, 0);
        for (auto [k, c] : terms) p[k] = c;
        while (p.size() > 1 && p.back() == 0) p.pop_back();
        return p;
    }
};

// Parser for element text, relative to a given ring.
class ElemParser {
public:
    ElemParser(const Ring& r, std::string_view s) : ring_(r), s_(s) {}

    RingElement parse_all() {
        RingElement v = expr(ring_);
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    const Ring& ring_;
    std::string_view s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("ring element: " + what + " at column " + std::to_string(pos_ + 1) + " in '" +
                    std::string(s_) + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    RingElement expr(const Ring& r) {
        RingElement acc = r.zero();
        bool first = true;
        while (true) {
            skip();
            int sign = 1;
            if (peek('+') || peek('-')) {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            first = false;
            RingElement t = term(r);
            acc = sign < 0 ? acc - t : acc + t;
        }
        return acc;
    }

    RingElement term(const Ring& r) {
        RingElement v = factor(r);
        while (peek('*')) {
            ++pos_;
            v = v * factor(r);
        }
        return v;
    }

    RingElement embed_base(const Ring& r, const RingElement& b) {
        RingElement out = r.zero();
        for (int i = 0; i < b.ring().width(); ++i) out.coord(i) = b.coord(i);
        return out;
    }

    RingElement factor(const Ring& r) {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            int64_t v;
            try {
                v = std::stoll(std::string(s_.substr(start, pos_ - start)));
            } catch (...) {
                fail("integer out of range");
            }
            return r.from_int(v);
        }
        if (c == 'X') {
            if (r.descriptor().kind != RingDescriptor::Kind::QuotientPoly) fail("X is not defined in this ring");
            ++pos_;
            int64_t deg = 1;
            if (peek('^')) {
                ++pos_;
                skip();
                size_t start = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (start == pos_) fail("expected exponent");
                deg = std::stoll(std::string(s_.substr(start, pos_ - start)));
            }
            RingElement x = r.zero();
            if (r.degree() > 1) {
                RingElement unit = r.base()->one();
                for (int i = 0; i < r.base()->width(); ++i) x.coord(r.base()->width() + i) = unit.coord(i);
            } else {
                // X ≡ -p0 when the modulus has degree 1.
                RingElement b = r.base()->from_int(-r.descriptor().poly[0]);
                x = embed_base(r, b);
            }
            RingElement p = r.one();
            for (int64_t k = 0; k < deg; ++k) p = p * x;
            return p;
        }
        if (c == '(') {
            ++pos_;
            // Tuples belong to the first product ring met along the base chain.
            const Ring* target = &r;
            while (target->descriptor().kind == RingDescriptor::Kind::QuotientPoly) target = target->base();
            RingElement first = expr(target->descriptor().kind == RingDescriptor::Kind::Product && looks_like_tuple()
                                         ? *target->factors()[0]
                                         : r);
            if (peek(',')) {
                if (target->descriptor().kind != RingDescriptor::Kind::Product) fail("tuple in a non-product ring");
                std::vector<RingElement> parts{first};
                while (peek(',')) {
                    ++pos_;
                    if (parts.size() >= target->factors().size()) fail("too many tuple components");
                    parts.push_back(expr(*target->factors()[parts.size()]));
                }
                if (!peek(')')) fail("expected ')'");
                ++pos_;
                if (parts.size() != target->factors().size()) fail("wrong number of tuple components");
                RingElement t = target->from_components(parts);
                // Lift through the quotient chain.
                std::vector<const Ring*> chain;
                for (const Ring* q = &r; q != target; q = q->base()) chain.push_back(q);
                for (auto it = chain.rbegin(); it != chain.rend(); ++it) t = embed_base(**it, t);
                return t;
            }
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return first;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    // True when the parenthesised group starting at pos_ has a top-level comma.
    bool looks_like_tuple() const {
        int depth = 0;
        for (size_t i = pos_; i < s_.size(); ++i) {
            char c = s_[i];
            if (c == '(') ++depth;
            else if (c == ')') {
                if (depth == 0) return false;
                --depth;
            } else if (c == ',' && depth == 0) {
                return true;
            }
        }
        return false;
    }
};

}  // namespace

// ---------------------------------------------------------------- descriptors

RingDescriptor RingDescriptor::integers() { return RingDescriptor{}; }

RingDescriptor RingDescriptor::mod(int64_t n) {
    if (n < 2) throw Error("Z/n requires n >= 2");
    RingDescriptor d;
    d.kind = Kind::IntegersMod;
    d.modulus = n;
    return d;
}

RingDescriptor RingDescriptor::quotient(RingDescriptor base, std::vector<int64_t> monic) {
    while (monic.size() > 1 && monic.back() == 0) monic.pop_back();
    if (monic.size() < 2) throw Error("quotient modulus must have degree >= 1");
    if (monic.back() != 1) throw Error("quotient modulus must be monic");
    RingDescriptor d;
    d.kind = Kind::QuotientPoly;
    d.base = std::make_shared<const RingDescriptor>(std::move(base));
    d.poly = std::move(monic);
    return d;
}

RingDescriptor RingDescriptor::product(std::vector<RingDescriptor> factors) {
    if (factors.size() < 2) throw Error("product needs at least two factors");
    RingDescriptor d;
    d.kind = Kind::Product;
    d.factors = std::move(factors);
    return d;
}

RingDescriptor RingDescriptor::parse(std::string_view text) { return DescParser(text).parse_all(); }

std::string RingDescriptor::to_string() const {
    switch (kind) {
        case Kind::Integers:
            return "Z";
        case Kind::IntegersMod:
            return "Z/" + std::to_string(modulus);
        case Kind::QuotientPoly: {
            std::string b = base->to_string();
            if (base->kind == Kind::Product) b = "(" + b + ")";
            return b + "[X]/(" + poly_to_string(poly) + ")";
        }
        case Kind::Product: {
            std::string out;
            for (size_t i = 0; i < factors.size(); ++i) {
                if (i) out += " x ";
                std::string f = factors[i].to_string();
                out += factors[i].kind == Kind::Product ? "(" + f + ")" : f;
            }
            return out;
        }
    }
    return "?";
}

bool RingDescriptor::is_finite() const {
    switch (kind) {
        case Kind::Integers:
            return false;
        case Kind::IntegersMod:
            return true;
        case Kind::QuotientPoly:
            return base->is_finite();
        case Kind::Product:
            return std::all_of(factors.begin(), factors.end(), [](auto& f) { return f.is_finite(); });
    }
    return false;
}

bool RingDescriptor::is_two_regular() const {
    switch (kind) {
        case Kind::Integers:
            return true;
        case Kind::IntegersMod:
            return modulus % 2 == 1;
        case Kind::QuotientPoly:
            return base->is_two_regular();
        case Kind::Product:
            return std::all_of(factors.begin(), factors.end(), [](auto& f) { return f.is_two_regular(); });
    }
    return false;
}

bool RingDescriptor::operator==(const RingDescriptor& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Integers:
            return true;
        case Kind::IntegersMod:
            return modulus == o.modulus;
        case Kind::QuotientPoly:
            return *base == *o.base && poly == o.poly;
        case Kind::Product:
            return factors == o.factors;
    }
    return false;
}

// ---------------------------------------------------------------------- ring

const Ring& Ring::get(const RingDescriptor& d) {
    // Recursive because constructing a ring interns its sub-rings.
    static std::recursive_mutex mu;
    static std::map<std::string, std::unique_ptr<Ring>> interned;
    std::string key = d.to_string();
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = interned.find(key);
    if (it != interned.end()) return *it->second;
    auto r = std::make_unique<Ring>(d);
    const Ring& ref = *r;
    interned.emplace(key, std::move(r));
    return ref;
}

Ring::Ring(RingDescriptor d) : desc_(std::move(d)) {
    using K = RingDescriptor::Kind;
    switch (desc_.kind) {
        case K::Integers:
            width_ = 1;
            leaf_mod_ = {0};
            finite_ = false;
            break;
        case K::IntegersMod:
            width_ = 1;
            leaf_mod_ = {desc_.modulus};
            finite_ = true;
            break;
        case K::QuotientPoly: {
            base_ = &Ring::get(*desc_.base);
            degree_ = static_cast<int>(desc_.poly.size()) - 1;
            width_ = base_->width() * degree_;
            for (int k = 0; k < degree_; ++k)
                leaf_mod_.insert(leaf_mod_.end(), base_->leaf_moduli().begin(), base_->leaf_moduli().end());
            finite_ = base_->is_finite();
            break;
        }
        case K::Product: {
            int off = 0;
            finite_ = true;
            for (auto& f : desc_.factors) {
                const Ring* r = &Ring::get(f);
                factors_.push_back(r);
                offsets_.push_back(off);
                off += r->width();
                leaf_mod_.insert(leaf_mod_.end(), r->leaf_moduli().begin(), r->leaf_moduli().end());
                finite_ = finite_ && r->is_finite();
            }
            width_ = off;
            break;
        }
    }
    if (width_ > kMaxWidth)
        throw Error("ring " + desc_.to_string() + " needs " + std::to_string(width_) +
                    " coordinates; the supported maximum is " + std::to_string(kMaxWidth));
}

uint64_t Ring::size() const {
    if (!finite_) throw NotComputable("ring " + to_string() + " is infinite");
    unsigned __int128 s = 1;
    for (int64_t m : leaf_mod_) {
        s *= static_cast<uint64_t>(m);
        if (s > (static_cast<unsigned __int128>(1) << 62)) throw NotComputable("ring " + to_string() + " too large");
    }
    return static_cast<uint64_t>(s);
}

void Ring::add(const int64_t* a, const int64_t* b, int64_t* out) const {
    for (int i = 0; i < width_; ++i) {
        int64_t m = leaf_mod_[i];
        if (m) {
            int64_t s = a[i] + b[i];
            out[i] = s >= m ? s - m : s;
        } else {
            out[i] = checked_add(a[i], b[i]);
        }
    }
}

void Ring::sub(const int64_t* a, const int64_t* b, int64_t* out) const {
    for (int i = 0; i < width_; ++i) {
        int64_t m = leaf_mod_[i];
        if (m) {
            int64_t s = a[i] - b[i];
            out[i] = s < 0 ? s + m : s;
        } else {
            if (b[i] == INT64_MIN) throw ArithmeticOverflow("integer overflow in subtraction");
            out[i] = checked_add(a[i], -b[i]);
        }
    }
}

void Ring::scale(const int64_t* a, int64_t k, int64_t* out) const {
    for (int i = 0; i < width_; ++i) {
        int64_t m = leaf_mod_[i];
        out[i] = m ? reduce128(static_cast<__int128>(a[i]) * reduce(k, m), m) : checked_mul(a[i], k);
    }
}

void Ring::set_int(int64_t k, int64_t* out) const {
    using K = RingDescriptor::Kind;
    switch (desc_.kind) {
        case K::Integers:
            out[0] = k;
            break;
        case K::IntegersMod:
            out[0] = reduce(k, desc_.modulus);
            break;
        case K::QuotientPoly:
            for (int i = 0; i < width_; ++i) out[i] = 0;
            base_->set_int(k, out);
            break;
        case K::Product:
            for (size_t f = 0; f < factors_.size(); ++f) factors_[f]->set_int(k, out + offsets_[f]);
            break;
    }
}

void Ring::mul(const int64_t* a, const int64_t* b, int64_t* out) const {
    using K = RingDescriptor::Kind;
    switch (desc_.kind) {
        case K::Integers:
            out[0] = checked_mul(a[0], b[0]);
            break;
        case K::IntegersMod:
            out[0] = reduce128(static_cast<__int128>(a[0]) * b[0], desc_.modulus);
            break;
        case K::Product:
            for (size_t f = 0; f < factors_.size(); ++f)
                factors_[f]->mul(a + offsets_[f], b + offsets_[f], out + offsets_[f]);
            break;
        case K::QuotientPoly: {
            const int bw = base_->width();
            const int d = degree_;
            int64_t tmp[2 * kMaxWidth] = {};
            int64_t prod[kMaxWidth];
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    base_->mul(a + i * bw, b + j * bw, prod);
                    base_->add(tmp + (i + j) * bw, prod, tmp + (i + j) * bw);
                }
            for (int k = 2 * d - 2; k >= d; --k) {
                int64_t* top = tmp + k * bw;
                for (int j = 0; j < d; ++j) {
                    if (desc_.poly[j] == 0) continue;
                    base_->scale(top, desc_.poly[j], prod);
                    base_->sub(tmp + (k - d + j) * bw, prod, tmp + (k - d + j) * bw);
                }
                for (int i = 0; i < bw; ++i) top[i] = 0;
            }
            for (int i = 0; i < width_; ++i) out[i] = tmp[i];
            break;
        }
    }
}

std::string Ring::format(const int64_t* a) const {
    using K = RingDescriptor::Kind;
    switch (desc_.kind) {
        case K::Integers:
        case K::IntegersMod:
            return std::to_string(a[0]);
        case K::Product: {
            std::string out = "(";
            for (size_t f = 0; f < factors_.size(); ++f) {
                if (f) out += ", ";
                out += factors_[f]->format(a + offsets_[f]);
            }
            return out + ")";
        }
        case K::QuotientPoly: {
            const int bw = base_->width();
            std::string out;
            for (int k = degree_ - 1; k >= 0; --k) {
                const int64_t* c = a + k * bw;
                bool zero = std::all_of(c, c + bw, [](int64_t v) { return v == 0; });
                if (zero) continue;
                std::string cs = base_->format(c);
                std::string mono = k == 0 ? "" : (k == 1 ? "X" : "X^" + std::to_string(k));
                bool plain_int = !cs.empty() && std::all_of(cs.begin() + (cs[0] == '-' ? 1 : 0), cs.end(),
                                                            [](char ch) { return std::isdigit(ch); });
                std::string term;
                if (mono.empty())
                    term = plain_int ? cs : "(" + cs + ")";
                else if (cs == "1")
                    term = mono;
                else if (cs == "-1")
                    term = "-" + mono;
                else if (plain_int)
                    term = cs + "*" + mono;
                else
                    term = "(" + cs + ")*" + mono;
                if (out.empty())
                    out = term;
                else if (term[0] == '-')
                    out += " - " + term.substr(1);
                else
                    out += " + " + term;
            }
            return out.empty() ? "0" : out;
        }
    }
    return "?";
}

RingElement Ring::from_int(int64_t k) const {
    RingElement r(this);
    set_int(k, r.c_.data());
    return r;
}

RingElement Ring::from_coords(const std::vector<int64_t>& coords) const {
    if (static_cast<int>(coords.size()) != width_) throw Error("coordinate count mismatch for " + to_string());
    RingElement r(this);
    for (int i = 0; i < width_; ++i) r.c_[i] = leaf_mod_[i] ? reduce(coords[i], leaf_mod_[i]) : coords[i];
    return r;
}

RingElement Ring::element_at(uint64_t index) const {
    RingElement r(this);
    for (int i = width_ - 1; i >= 0; --i) {
        auto m = static_cast<uint64_t>(leaf_mod_[i]);
        r.c_[i] = static_cast<int64_t>(index % m);
        index /= m;
    }
    return r;
}

uint64_t Ring::index_of(const RingElement& a) const {
    uint64_t idx = 0;
    for (int i = 0; i < width_; ++i) idx = idx * static_cast<uint64_t>(leaf_mod_[i]) + static_cast<uint64_t>(a.c_[i]);
    return idx;
}

std::vector<RingElement> Ring::elements() const {
    uint64_t n = size();
    if (n > 10'000'000) throw BudgetExceeded("ring " + to_string() + " too large to enumerate");
    std::vector<RingElement> out;
    out.reserve(n);
    for (uint64_t i = 0; i < n; ++i) out.push_back(element_at(i));
    return out;
}

std::vector<RingElement> Ring::two_torsion_generators() const {
    // 2a = 0 is a coordinatewise condition: each ℤ/m leaf with m even
    // contributes m/2, free leaves contribute nothing.
    std::vector<RingElement> gens;
    for (int i = 0; i < width_; ++i) {
        if (leaf_mod_[i] && leaf_mod_[i] % 2 == 0) {
            RingElement g(this);
            g.c_[i] = leaf_mod_[i] / 2;
            gens.push_back(g);
        }
    }
    if (gens.empty()) gens.push_back(zero());
    return gens;
}

std::vector<RingElement> Ring::idempotents() const {
    using K = RingDescriptor::Kind;
    if (finite_) {
        if (size() > 1'000'000) throw NotComputable("idempotent enumeration over " + to_string() + " exceeds cap");
        std::vector<RingElement> out;
        for (auto& e : elements())
            if (e * e == e) out.push_back(e);
        return out;
    }
    if (desc_.kind == K::Integers) return {zero(), one()};
    if (desc_.kind == K::Product) {
        std::vector<std::vector<RingElement>> per;
        for (auto* f : factors_) per.push_back(f->idempotents());
        std::vector<RingElement> out;
        std::vector<size_t> idx(per.size(), 0);
        while (true) {
            std::vector<RingElement> parts;
            for (size_t f = 0; f < per.size(); ++f) parts.push_back(per[f][idx[f]]);
            out.push_back(from_components(parts));
            size_t f = per.size();
            while (f > 0) {
                --f;
                if (++idx[f] < per[f].size()) break;
                idx[f] = 0;
                if (f == 0) {
                    std::sort(out.begin(), out.end());
                    return out;
                }
            }
        }
    }
    throw NotComputable("idempotents of " + to_string() + " are not computable");
}

bool Ring::is_zero_divisor(const RingElement& a) const {
    Matrix m(*this, 1, 1);
    m.at(0, 0) = a;
    for (auto& v : nullspace(m))
        if (!v[0].is_zero()) return true;
    return false;
}

RingElement Ring::parse_element(std::string_view text) const { return ElemParser(*this, text).parse_all(); }

RingElement Ring::factor_component(const RingElement& a, size_t i) const {
    const Ring* f = factors_.at(i);
    RingElement r(f);
    for (int k = 0; k < f->width(); ++k) r.c_[k] = a.c_[offsets_[i] + k];
    return r;
}

RingElement Ring::from_components(const std::vector<RingElement>& parts) const {
    if (parts.size() != factors_.size()) throw Error("component count mismatch");
    RingElement r(this);
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].ring_ptr() != factors_[i]) throw DescriptorMismatch("component ring mismatch");
        for (int k = 0; k < factors_[i]->width(); ++k) r.c_[offsets_[i] + k] = parts[i].coord(k);
    }
    return r;
}

// ------------------------------------------------------------------ elements

namespace {
void check_same(const RingElement& a, const RingElement& b) {
    if (a.ring_ptr() != b.ring_ptr())
        throw DescriptorMismatch("ring mismatch: " + (a.ring_ptr() ? a.ring().to_string() : "null") + " vs " +
                                 (b.ring_ptr() ? b.ring().to_string() : "null"));
}
}  // namespace

RingElement RingElement::operator+(const RingElement& b) const {
    check_same(*this, b);
    RingElement r(ring_);
    ring_->add(c_.data(), b.c_.data(), r.c_.data());
    return r;
}

RingElement RingElement::operator-(const RingElement& b) const {
    check_same(*this, b);
    RingElement r(ring_);
    ring_->sub(c_.data(), b.c_.data(), r.c_.data());
    return r;
}

RingElement RingElement::operator*(const RingElement& b) const {
    check_same(*this, b);
    RingElement r(ring_);
    ring_->mul(c_.data(), b.c_.data(), r.c_.data());
    return r;
}

RingElement RingElement::operator-() const { return ring_->zero() - *this; }

RingElement RingElement::scaled(int64_t k) const {
    RingElement r(ring_);
    ring_->scale(c_.data(), k, r.c_.data());
    return r;
}

bool RingElement::is_zero() const {
    for (int i = 0; i < ring_->width(); ++i)
        if (c_[i]) return false;
    return true;
}

bool RingElement::is_one() const { return *this == ring_->one(); }

bool RingElement::operator==(const RingElement& b) const {
    check_same(*this, b);
    for (int i = 0; i < ring_->width(); ++i)
        if (c_[i] != b.c_[i]) return false;
    return true;
}

bool RingElement::operator<(const RingElement& b) const {
    check_same(*this, b);
    for (int i = 0; i < ring_->width(); ++i)
        if (c_[i] != b.c_[i]) return c_[i] < b.c_[i];
    return false;
}

std::optional<RingElement> RingElement::try_invert() const {
    using K = RingDescriptor::Kind;
    const auto& d = ring_->descriptor();
    switch (d.kind) {
        case K::Integers:
            if (c_[0] == 1 || c_[0] == -1) return *this;
            return std::nullopt;
        case K::IntegersMod: {
            int64_t g = std::gcd(c_[0], d.modulus);
            if (g != 1) return std::nullopt;
            // extended Euclid
            int64_t r0 = d.modulus, r1 = c_[0], s0 = 0, s1 = 1;
            while (r1) {
                int64_t q = r0 / r1;
                std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
                std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
            }
            return ring_->from_int(s0);
        }
        case K::Product: {
            std::vector<RingElement> parts;
            for (size_t i = 0; i < ring_->factors().size(); ++i) {
                auto inv = ring_->factor_component(*this, i).try_invert();
                if (!inv) return std::nullopt;
                parts.push_back(*inv);
            }
            return ring_->from_components(parts);
        }
        case K::QuotientPoly: {
            Matrix m(*ring_, 1, 1);
            m.at(0, 0) = *this;
            auto sol = solve_linear(m, {ring_->one()});
            if (!sol) return std::nullopt;
            return (*sol)[0];
        }
    }
    return std::nullopt;
}

std::string RingElement::to_string() const { return ring_->format(c_.data()); }

// --------------------------------------------------------------- idempotents

bool is_idempotent(const RingElement& e) { return e * e == e; }

RingElement idem_add(const RingElement& e, const RingElement& f) { return e + f - (e * f).scaled(2); }

RingElement idem_to_mu2(const RingElement& e) { return e.ring().one() - e.scaled(2); }

bool in_mu2(const RingElement& d) { return (d * d).is_one(); }

bool in_two_torsion(const RingElement& a) { return a.scaled(2).is_zero(); }

}  // namespace cliffring
