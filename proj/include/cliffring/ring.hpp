#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cliffring {

// Error types shared by every module.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DescriptorMismatch : Error {
    using Error::Error;
};
struct NotComputable : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};
struct PreconditionFailed : Error {
    using Error::Error;
};
struct ArithmeticOverflow : Error {
    using Error::Error;
};

struct RingDescriptor {
    enum class Kind { Integers, IntegersMod, QuotientPoly, Product };

    Kind kind = Kind::Integers;
    int64_t modulus = 0;                         // IntegersMod
    std::shared_ptr<const RingDescriptor> base;  // QuotientPoly
    std::vector<int64_t> poly;                   // QuotientPoly: monic, ascending integer coefficients
    std::vector<RingDescriptor> factors;         // Product

    static RingDescriptor integers();
    static RingDescriptor mod(int64_t n);
    static RingDescriptor quotient(RingDescriptor base, std::vector<int64_t> monic);
    static RingDescriptor product(std::vector<RingDescriptor> factors);

    // Grammar: Z | Z/<n> | <ring>[X]/(<poly>) | <ring> x <ring> | ( <ring> )
    static RingDescriptor parse(std::string_view text);
    std::string to_string() const;

    bool is_finite() const;
    bool is_two_regular() const;

    bool operator==(const RingDescriptor& o) const;
};

class Ring;

inline constexpr int kMaxWidth = 8;

// Element of an interned ring. Coordinates are the canonical leaf values:
// one per ℤ or ℤ/n leaf, in depth-first order.
class RingElement {
public:
    RingElement() = default;
    explicit RingElement(const Ring* r) : ring_(r) { c_.fill(0); }

    const Ring& ring() const { return *ring_; }
    const Ring* ring_ptr() const { return ring_; }
    int64_t coord(int i) const { return c_[i]; }
    int64_t& coord(int i) { return c_[i]; }

    RingElement operator+(const RingElement& b) const;
    RingElement operator-(const RingElement& b) const;
    RingElement operator*(const RingElement& b) const;
    RingElement operator-() const;
    RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
    RingElement& operator-=(const RingElement& b) { return *this = *this - b; }
    RingElement& operator*=(const RingElement& b) { return *this = *this * b; }
    RingElement scaled(int64_t k) const;

    bool is_zero() const;
    bool is_one() const;
    bool operator==(const RingElement& b) const;
    bool operator!=(const RingElement& b) const { return !(*this == b); }
    bool operator<(const RingElement& b) const;

    std::optional<RingElement> try_invert() const;
    std::string to_string() const;

private:
    friend class Ring;
    const Ring* ring_ = nullptr;
    std::array<int64_t, kMaxWidth> c_{};
};

// Interned, immutable ring. Obtain with Ring::get; references stay valid for
// the program lifetime.
class Ring {
public:
    static const Ring& get(const RingDescriptor& d);
    static const Ring& parse(std::string_view text) { return get(RingDescriptor::parse(text)); }

    const RingDescriptor& descriptor() const { return desc_; }
    std::string to_string() const { return desc_.to_string(); }
    int width() const { return width_; }
    // Leaf moduli; 0 marks a free ℤ coordinate.
    const std::vector<int64_t>& leaf_moduli() const { return leaf_mod_; }

    bool is_finite() const { return finite_; }
    bool is_two_regular() const { return desc_.is_two_regular(); }
    // Number of elements; throws NotComputable when infinite or too large.
    uint64_t size() const;

    RingElement zero() const { return RingElement(this); }
    RingElement one() const { return from_int(1); }
    RingElement from_int(int64_t k) const;
    RingElement from_coords(const std::vector<int64_t>& coords) const;

    // Finite rings: bijection with [0, size()), lexicographic in coordinates.
    RingElement element_at(uint64_t index) const;
    uint64_t index_of(const RingElement& a) const;
    std::vector<RingElement> elements() const;

    std::vector<RingElement> two_torsion_generators() const;
    std::vector<RingElement> idempotents() const;
    bool is_zero_divisor(const RingElement& a) const;
    RingElement parse_element(std::string_view text) const;

    // Quotient-polynomial structure.
    const Ring* base() const { return base_; }
    int degree() const { return degree_; }
    // Product structure.
    const std::vector<const Ring*>& factors() const { return factors_; }
    RingElement factor_component(const RingElement& a, size_t i) const;
    RingElement from_components(const std::vector<RingElement>& parts) const;

    // Low-level arithmetic on coordinate blocks; used by RingElement.
    void add(const int64_t* a, const int64_t* b, int64_t* out) const;
    void sub(const int64_t* a, const int64_t* b, int64_t* out) const;
    void mul(const int64_t* a, const int64_t* b, int64_t* out) const;
    void scale(const int64_t* a, int64_t k, int64_t* out) const;
    void set_int(int64_t k, int64_t* out) const;
    std::string format(const int64_t* a) const;

    explicit Ring(RingDescriptor d);

private:
    RingDescriptor desc_;
    int width_ = 1;
    bool finite_ = false;
    std::vector<int64_t> leaf_mod_;
    const Ring* base_ = nullptr;
    int degree_ = 0;
    std::vector<const Ring*> factors_;
    std::vector<int> offsets_;
};

// Idempotent calculus.
bool is_idempotent(const RingElement& e);
RingElement idem_add(const RingElement& e, const RingElement& f);
RingElement idem_to_mu2(const RingElement& e);
bool in_mu2(const RingElement& d);
bool in_two_torsion(const RingElement& a);

}  // namespace cliffring
