#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ht/errors.hpp"

namespace ht {

// ---------------------------------------------------------------------------
// Variable contexts
// ---------------------------------------------------------------------------
// A VarContext is an explicit ordered list of variable names.  Polynomials
// carry their context; operations mixing polynomials from different contexts
// are errors (no implicit unification).  Contexts compare by value (the name
// sequence), so round-tripping through text or JSON preserves compatibility.
class VarContext {
public:
    VarContext() = default;
    explicit VarContext(std::vector<std::string> names);

    static VarContext xs(int n);  // x1..xn

    int size() const { return static_cast<int>(names_->size()); }
    const std::string& name(int i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const { return *names_; }
    // Index of a name, or -1.
    int index_of(const std::string& name) const;

    bool operator==(const VarContext& o) const;
    bool operator!=(const VarContext& o) const { return !(*this == o); }

private:
    std::shared_ptr<const std::vector<std::string>> names_ =
        std::make_shared<const std::vector<std::string>>();
};

// ---------------------------------------------------------------------------
// Packed monomials
// ---------------------------------------------------------------------------
// Exponent vectors are packed into two 64-bit words using 6-bit fields, the
// first context variable occupying the most significant field.  This bounds
// the engine at 20 variables and per-variable exponents <= 63, which covers
// every object built here; violations raise budget_error.  The packing makes
// the graded-lexicographic order (total degree first, then lexicographic with
// earlier variables weighing more) a compare of (degree, hi, lo).
struct Mono {
    std::uint16_t degree = 0;
    std::uint64_t hi = 0, lo = 0;

    bool operator==(const Mono& o) const { return degree == o.degree && hi == o.hi && lo == o.lo; }
    bool operator!=(const Mono& o) const { return !(*this == o); }
    // graded-lex "less than"
    bool operator<(const Mono& o) const {
        if (degree != o.degree) return degree < o.degree;
        if (hi != o.hi) return hi < o.hi;
        return lo < o.lo;
    }

    static constexpr int kMaxVars = 20;
    static constexpr int kMaxExp = 63;

    int exponent(int var) const;
    void set_exponent(int var, int e);  // does not touch `degree`
    static Mono from_exponents(const std::vector<int>& exps);
    std::vector<int> exponents(int nvars) const;
    // Sum of exponents of the variables in `mask` (bit i = variable i).
    int masked_degree(std::uint32_t mask) const;
    // Componentwise difference; nullopt if any component would go negative.
    std::optional<Mono> divide_by(const Mono& o) const;
    Mono multiply(const Mono& o) const;  // throws budget_error on overflow
};

struct MonoHash {
    std::size_t operator()(const Mono& m) const {
        std::uint64_t h = m.hi * 0x9e3779b97f4a7c15ULL;
        h ^= m.lo + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------
// Exact multivariate polynomials with GMP integer coefficients.  Terms are
// stored sorted in *descending* graded-lex order, with no zero coefficients
// and no repeated monomials.  A global term-count budget (environment
// variable HYPERTREE_BUDGET_TERMS, default 8'000'000) guards every operation
// that can grow a polynomial; exceeding it raises budget_error.
class Poly {
public:
    Poly() = default;  // zero polynomial in the empty context
    explicit Poly(VarContext ctx) : ctx_(std::move(ctx)) {}

    static Poly zero(const VarContext& ctx) { return Poly(ctx); }
    static Poly constant(const VarContext& ctx, const mpz_class& c);
    static Poly variable(const VarContext& ctx, int var);

    const VarContext& context() const { return ctx_; }
    const std::vector<std::pair<Mono, mpz_class>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    // Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.front().first.degree; }
    int degree_in(int var) const;
    const std::pair<Mono, mpz_class>& leading_term() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const mpz_class& c) const;
    Poly pow(int k) const;

    Poly derivative(int var) const;
    // Capture-free single-variable substitution; `value` must share context.
    Poly substitute(int var, const Poly& value) const;
    // Move to a new context: old variable i becomes new variable var_map[i].
    // var_map must be injective on variables that actually occur.
    Poly reindex(const VarContext& to, const std::vector<int>& var_map) const;
    // Exact substitution of integer values for all variables.
    mpz_class evaluate(const std::vector<mpz_class>& values) const;

    // GCD of all coefficients (non-negative); 0 for the zero polynomial.
    mpz_class content() const;
    // Divide by content and normalize the sign so the graded-lex leading
    // coefficient is positive.  Errors on the zero polynomial.
    Poly canonicalized() const;
    // Exact division; throws internal_error if the division is not exact.
    Poly divided_exactly_by(const Poly& q) const;

    // True iff the polynomial is invariant under simultaneous translation of
    // all variables, equivalently sum_v d/dx_v == 0.
    bool is_translation_invariant() const;

    // Smallest vanishing order along the diagonal {x_v equal for v in I}:
    // substitute x_v -> y + u_v for v in I and take the minimal total
    // u-degree.  `I` is a set of variable indices, |I| >= 2; the polynomial
    // must be nonzero.  Uses a direct term scan when the polynomial is
    // translation invariant (valid because renaming monomials cannot cancel),
    // and the literal substitution otherwise.
    int diagonal_multiplicity(const std::vector<int>& I) const;

    // Canonical text: terms in descending graded-lex order, explicit
    // coefficients, '*" between factors, '^' for powers, e.g.
    // "-1*x1^2*x3 + 2*x2 - 5".
    std::string to_string() const;
    static Poly parse(const VarContext& ctx, const std::string& text);

    // Construct from raw (mono, coeff) pairs: sorts, merges, strips zeros.
    static Poly from_terms(const VarContext& ctx,
                           std::vector<std::pair<Mono, mpz_class>> terms);

    static std::size_t term_budget();

private:
    VarContext ctx_;
    std::vector<std::pair<Mono, mpz_class>> terms_;

    void check_same_context(const Poly& o) const;
    void normalize();  // sort desc, merge, strip zeros, check budget
};

// Convenience: linear form x_i - x_j in the given context.
Poly linear_difference(const VarContext& ctx, int i, int j);

} // namespace ht
