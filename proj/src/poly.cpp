#include "ht/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

namespace ht {

// ---------------------------------------------------------------------------
// VarContext
// ---------------------------------------------------------------------------

VarContext::VarContext(std::vector<std::string> names) {
    if (static_cast<int>(names.size()) > Mono::kMaxVars)
        throw budget_error("variable context exceeds " + std::to_string(Mono::kMaxVars) +
                           " variables");
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty()) throw input_error("empty variable name");
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j]) throw input_error("duplicate variable name: " + names[i]);
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

VarContext VarContext::xs(int n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return VarContext(std::move(names));
}

int VarContext::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if ((*names_)[i] == name) return i;
    return -1;
}

bool VarContext::operator==(const VarContext& o) const {
    return names_ == o.names_ || *names_ == *o.names_;
}

// ---------------------------------------------------------------------------
// Mono
// ---------------------------------------------------------------------------

namespace {
// Ten 6-bit fields per word; variable 0 sits in the most significant field of
// `hi`, variable 10 in the most significant field of `lo`.
inline int field_shift(int slot) { return 6 * (9 - slot); }
constexpr std::uint64_t kFieldMask = 0x3f;
// Bit 5 of every field: set when an exponent is >= 32, in which case the
// carry-free fast paths are not safe and the field-by-field path is used.
constexpr std::uint64_t kGuard = 0x0820820820820820ULL;
}  // namespace

int Mono::exponent(int var) const {
    const std::uint64_t w = var < 10 ? hi : lo;
    return static_cast<int>((w >> field_shift(var % 10)) & kFieldMask);
}

void Mono::set_exponent(int var, int e) {
    std::uint64_t& w = var < 10 ? hi : lo;
    const int sh = field_shift(var % 10);
    w = (w & ~(kFieldMask << sh)) | (static_cast<std::uint64_t>(e) << sh);
}

Mono Mono::from_exponents(const std::vector<int>& exps) {
    if (static_cast<int>(exps.size()) > kMaxVars)
        throw budget_error("exponent vector exceeds variable limit");
    Mono m;
    int deg = 0;
    for (std::size_t v = 0; v < exps.size(); ++v) {
        if (exps[v] < 0) throw input_error("negative exponent");
        if (exps[v] > kMaxExp) throw budget_error("exponent exceeds field capacity");
        m.set_exponent(static_cast<int>(v), exps[v]);
        deg += exps[v];
    }
    m.degree = static_cast<std::uint16_t>(deg);
    return m;
}

std::vector<int> Mono::exponents(int nvars) const {
    std::vector<int> out(nvars);
    for (int v = 0; v < nvars; ++v) out[v] = exponent(v);
    return out;
}

int Mono::masked_degree(std::uint32_t mask) const {
    int s = 0;
    while (mask) {
        int v = __builtin_ctz(mask);
        mask &= mask - 1;
        s += exponent(v);
    }
    return s;
}

std::optional<Mono> Mono::divide_by(const Mono& o) const {
    if (o.degree > degree) return std::nullopt;
    Mono r;
    r.degree = static_cast<std::uint16_t>(degree - o.degree);
    for (int v = 0; v < kMaxVars; ++v) {
        int d = exponent(v) - o.exponent(v);
        if (d < 0) return std::nullopt;
        r.set_exponent(v, d);
    }
    return r;
}

Mono Mono::multiply(const Mono& o) const {
    Mono r;
    if (((hi | o.hi | lo | o.lo) & kGuard) == 0) {
        // All exponents < 32: fieldwise addition cannot carry across fields.
        r.hi = hi + o.hi;
        r.lo = lo + o.lo;
        r.degree = static_cast<std::uint16_t>(degree + o.degree);
        return r;
    }
    int deg = 0;
    for (int v = 0; v < kMaxVars; ++v) {
        int e = exponent(v) + o.exponent(v);
        if (e > kMaxExp) throw budget_error("exponent overflow in monomial product");
        r.set_exponent(v, e);
        deg += e;
    }
    r.degree = static_cast<std::uint16_t>(deg);
    return r;
}

// ---------------------------------------------------------------------------
// Poly
// ---------------------------------------------------------------------------

std::size_t Poly::term_budget() {
    static const std::size_t budget = [] {
        const char* env = std::getenv("HYPERTREE_BUDGET_TERMS");
        if (env && *env) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(8000000);
    }();
    return budget;
}

Poly Poly::constant(const VarContext& ctx, const mpz_class& c) {
    Poly p(ctx);
    if (c != 0) p.terms_.emplace_back(Mono{}, c);
    return p;
}

Poly Poly::variable(const VarContext& ctx, int var) {
    if (var < 0 || var >= ctx.size()) throw input_error("variable index out of range");
    Poly p(ctx);
    Mono m;
    m.set_exponent(var, 1);
    m.degree = 1;
    p.terms_.emplace_back(m, mpz_class(1));
    return p;
}

int Poly::degree_in(int var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
    return d;
}

const std::pair<Mono, mpz_class>& Poly::leading_term() const {
    if (terms_.empty()) throw precondition_error("zero polynomial has no leading term");
    return terms_.front();
}

void Poly::check_same_context(const Poly& o) const {
    if (ctx_ != o.ctx_)
        throw input_error("operation mixes polynomials from different variable contexts");
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return b.first < a.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < terms_.size(); ++r) {
        if (w > 0 && terms_[w - 1].first == terms_[r].first) {
            terms_[w - 1].second += terms_[r].second;
            if (terms_[w - 1].second == 0) --w;
        } else {
            if (w != r) terms_[w] = std::move(terms_[r]);
            if (terms_[w].second != 0) ++w;
        }
    }
    terms_.resize(w);
    if (terms_.size() > term_budget())
        throw budget_error("term budget exceeded (" + std::to_string(terms_.size()) + " terms)");
}

Poly Poly::from_terms(const VarContext& ctx, std::vector<std::pair<Mono, mpz_class>> terms) {
    Poly p(ctx);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    check_same_context(o);
    Poly r(ctx_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && o.terms_[j].first < terms_[i].first)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || terms_[i].first < o.terms_[j].first) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            mpz_class c = terms_[i].second + o.terms_[j].second;
            if (c != 0) r.terms_.emplace_back(terms_[i].first, std::move(c));
            ++i, ++j;
        }
    }
    if (r.terms_.size() > term_budget()) throw budget_error("term budget exceeded in addition");
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    check_same_context(o);
    if (is_zero() || o.is_zero()) return Poly(ctx_);
    const Poly& small = terms_.size() <= o.terms_.size() ? *this : o;
    const Poly& large = terms_.size() <= o.terms_.size() ? o : *this;
    std::unordered_map<Mono, mpz_class, MonoHash> acc;
    acc.reserve(std::min(terms_.size() * o.terms_.size(), static_cast<std::size_t>(1) << 20));
    const std::size_t budget = term_budget();
    for (const auto& [ma, ca] : small.terms_) {
        for (const auto& [mb, cb] : large.terms_) {
            Mono m = ma.multiply(mb);
            auto it = acc.try_emplace(m, 0).first;
            mpz_addmul(it->second.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
            if (acc.size() > budget) throw budget_error("term budget exceeded in multiplication");
        }
    }
    std::vector<std::pair<Mono, mpz_class>> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) terms.emplace_back(m, std::move(c));
    return from_terms(ctx_, std::move(terms));
}

bool Poly::operator==(const Poly& o) const {
    if (ctx_ != o.ctx_) return false;
    return terms_ == o.terms_;
}

Poly Poly::scaled(const mpz_class& c) const {
    if (c == 0) return Poly(ctx_);
    Poly r(*this);
    for (auto& [m, k] : r.terms_) k *= c;
    return r;
}

Poly Poly::pow(int k) const {
    if (k < 0) throw input_error("negative power");
    Poly r = Poly::constant(ctx_, 1);
    Poly base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

Poly Poly::derivative(int var) const {
    if (var < 0 || var >= ctx_.size()) throw input_error("variable index out of range");
    std::vector<std::pair<Mono, mpz_class>> terms;
    terms.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        int e = m.exponent(var);
        if (e == 0) continue;
        Mono d = m;
        d.set_exponent(var, e - 1);
        d.degree = static_cast<std::uint16_t>(m.degree - 1);
        terms.emplace_back(d, c * e);
    }
    return from_terms(ctx_, std::move(terms));
}

Poly Poly::substitute(int var, const Poly& value) const {
    if (var < 0 || var >= ctx_.size()) throw input_error("variable index out of range");
    check_same_context(value);
    // Collect coefficients of var^e, then evaluate by Horner's rule.
    std::map<int, std::vector<std::pair<Mono, mpz_class>>> slices;
    for (const auto& [m, c] : terms_) {
        int e = m.exponent(var);
        Mono base = m;
        base.set_exponent(var, 0);
        base.degree = static_cast<std::uint16_t>(m.degree - e);
        slices[e].emplace_back(base, c);
    }
    Poly result(ctx_);
    int prev = -1;
    for (auto it = slices.rbegin(); it != slices.rend(); ++it) {
        if (prev >= 0)
            for (int k = 0; k < prev - it->first; ++k) result = result * value;
        result = result + from_terms(ctx_, std::move(it->second));
        prev = it->first;
    }
    if (prev > 0)
        for (int k = 0; k < prev; ++k) result = result * value;
    return result;
}

Poly Poly::reindex(const VarContext& to, const std::vector<int>& var_map) const {
    if (static_cast<int>(var_map.size()) != ctx_.size())
        throw input_error("reindex map size does not match context");
    // The map must be injective on the set of variables that occur anywhere
    // in the polynomial; a collision would silently merge distinct variables.
    std::vector<bool> occurs(ctx_.size(), false);
    for (const auto& [m, c] : terms_)
        for (int v = 0; v < ctx_.size(); ++v)
            if (m.exponent(v) != 0) occurs[v] = true;
    std::vector<bool> taken(to.size(), false);
    for (int v = 0; v < ctx_.size(); ++v) {
        if (!occurs[v]) continue;
        int tv = var_map[v];
        if (tv < 0 || tv >= to.size())
            throw input_error("reindex target out of range");
        if (taken[tv])
            throw internal_error("reindex map collides on occurring variables");
        taken[tv] = true;
    }
    std::vector<std::pair<Mono, mpz_class>> terms;
    terms.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        Mono t;
        int deg = 0;
        for (int v = 0; v < ctx_.size(); ++v) {
            int e = m.exponent(v);
            if (e == 0) continue;
            t.set_exponent(var_map[v], e);
            deg += e;
        }
        t.degree = static_cast<std::uint16_t>(deg);
        terms.emplace_back(t, c);
    }
    return from_terms(to, std::move(terms));
}

mpz_class Poly::evaluate(const std::vector<mpz_class>& values) const {
    if (static_cast<int>(values.size()) != ctx_.size())
        throw input_error("evaluation point size does not match context");
    mpz_class total = 0, t, p;
    for (const auto& [m, c] : terms_) {
        t = c;
        for (int v = 0; v < ctx_.size(); ++v) {
            int e = m.exponent(v);
            if (e == 0) continue;
            mpz_pow_ui(p.get_mpz_t(), values[v].get_mpz_t(), e);
            t *= p;
        }
        total += t;
    }
    return total;
}

mpz_class Poly::content() const {
    mpz_class g = 0;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::canonicalized() const {
    if (is_zero()) throw precondition_error("cannot canonicalize the zero polynomial");
    mpz_class g = content();
    Poly r(*this);
    if (r.terms_.front().second < 0) g = -g;
    if (g != 1)
        for (auto& [m, c] : r.terms_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return r;
}

Poly Poly::divided_exactly_by(const Poly& q) const {
    check_same_context(q);
    if (q.is_zero()) throw precondition_error("division by the zero polynomial");
    Poly r(*this);
    std::vector<std::pair<Mono, mpz_class>> quot;
    const auto& [qm, qc] = q.leading_term();
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.leading_term();
        auto m = rm.divide_by(qm);
        if (!m) throw internal_error("inexact polynomial division (monomial)");
        if (!mpz_divisible_p(rc.get_mpz_t(), qc.get_mpz_t()))
            throw internal_error("inexact polynomial division (coefficient)");
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), rc.get_mpz_t(), qc.get_mpz_t());
        quot.emplace_back(*m, c);
        // r -= c * m * q
        std::vector<std::pair<Mono, mpz_class>> sub;
        sub.reserve(q.terms_.size());
        for (const auto& [tm, tc] : q.terms_) sub.emplace_back(m->multiply(tm), -c * tc);
        r = r + from_terms(ctx_, std::move(sub));
    }
    return from_terms(ctx_, std::move(quot));
}

bool Poly::is_translation_invariant() const {
    Poly s(ctx_);
    for (int v = 0; v < ctx_.size(); ++v) s = s + derivative(v);
    return s.is_zero();
}

int Poly::diagonal_multiplicity(const std::vector<int>& I) const {
    if (is_zero()) throw precondition_error("diagonal multiplicity of the zero polynomial");
    if (I.size() < 2) throw precondition_error("diagonal needs at least two variables");
    std::uint32_t mask = 0;
    for (int v : I) {
        if (v < 0 || v >= ctx_.size()) throw input_error("diagonal variable out of range");
        if (mask & (1u << v)) throw input_error("repeated diagonal variable");
        mask |= 1u << v;
    }
    if (is_translation_invariant()) {
        // Substituting x_v -> y + u_v and then translating every variable by
        // -y turns the polynomial into a renaming of itself (x_v -> u_v on I,
        // x_w -> x_w - y off I, jointly independent), so distinct monomials
        // stay distinct and the minimal u-degree is the minimal I-degree over
        // the stored terms.
        int best = -1;
        for (const auto& [m, c] : terms_) {
            int d = m.masked_degree(mask);
            if (best < 0 || d < best) best = d;
            if (best == 0) break;
        }
        return best;
    }
    // Literal substitution x_v -> y + u_v for v in I.
    std::vector<std::string> names = ctx_.names();
    const int y_index = static_cast<int>(names.size());
    names.push_back("_diag_y");
    std::vector<int> uvar(ctx_.size(), -1);
    for (int v : I) {
        uvar[v] = static_cast<int>(names.size());
        names.push_back("_diag_u_" + ctx_.name(v));
    }
    if (static_cast<int>(names.size()) > Mono::kMaxVars)
        throw budget_error("diagonal substitution exceeds the variable limit");
    VarContext ext(std::move(names));
    std::vector<int> id(ctx_.size());
    for (int v = 0; v < ctx_.size(); ++v) id[v] = v;
    Poly p = reindex(ext, id);
    Poly y = Poly::variable(ext, y_index);
    for (int v : I) p = p.substitute(v, y + Poly::variable(ext, uvar[v]));
    std::uint32_t umask = 0;
    for (int v : I) umask |= 1u << uvar[v];
    int best = -1;
    for (const auto& [m, c] : p.terms()) {
        int d = m.masked_degree(umask);
        if (best < 0 || d < best) best = d;
        if (best == 0) break;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        out << a.get_str();
        for (int v = 0; v < ctx_.size(); ++v) {
            int e = m.exponent(v);
            if (e == 0) continue;
            out << "*" << ctx_.name(v);
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

namespace {
struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
};
}  // namespace

Poly Poly::parse(const VarContext& ctx, const std::string& text) {
    Cursor c{text};
    std::vector<std::pair<Mono, mpz_class>> terms;
    // Variable names sorted longest-first for greedy matching.
    std::vector<int> order(ctx.size());
    for (int v = 0; v < ctx.size(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return ctx.name(a).size() > ctx.name(b).size();
    });
    bool any = false;
    while (!c.done()) {
        int sign = 1;
        c.skip_ws();
        while (c.i < c.s.size() && (c.s[c.i] == '+' || c.s[c.i] == '-')) {
            if (c.s[c.i] == '-') sign = -sign;
            ++c.i;
            c.skip_ws();
        }
        mpz_class coeff = 1;
        bool have_digits = false, have_factor = false;
        if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            std::string num;
            while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
                num.push_back(c.s[c.i++]);
            coeff = mpz_class(num);
            have_digits = true;
        }
        std::vector<int> exps(ctx.size(), 0);
        while (true) {
            c.skip_ws();
            std::size_t save = c.i;
            if (have_digits || have_factor) {
                if (c.i < c.s.size() && c.s[c.i] == '*') {
                    ++c.i;
                    c.skip_ws();
                } else {
                    break;
                }
            }
            int var = -1;
            for (int v : order) {
                const std::string& nm = ctx.name(v);
                if (c.s.compare(c.i, nm.size(), nm) == 0) {
                    var = v;
                    break;
                }
            }
            if (var < 0) {
                if (have_digits || have_factor) {
                    c.i = save;
                    break;
                }
                throw input_error("cannot parse polynomial near: " + text.substr(c.i));
            }
            c.i += ctx.name(var).size();
            int e = 1;
            c.skip_ws();
            if (c.i < c.s.size() && c.s[c.i] == '^') {
                ++c.i;
                c.skip_ws();
                std::string num;
                while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
                    num.push_back(c.s[c.i++]);
                if (num.empty()) throw input_error("missing exponent in polynomial text");
                e = std::stoi(num);
                if (e > Mono::kMaxExp) throw budget_error("exponent exceeds field capacity");
            }
            exps[var] += e;
            if (exps[var] > Mono::kMaxExp) throw budget_error("exponent exceeds field capacity");
            have_factor = true;
        }
        if (!have_digits && !have_factor)
            throw input_error("empty term in polynomial text");
        terms.emplace_back(Mono::from_exponents(exps), sign * coeff);
        any = true;
    }
    if (!any && text.find('0') == std::string::npos)
        throw input_error("empty polynomial text");
    return from_terms(ctx, std::move(terms));
}

Poly linear_difference(const VarContext& ctx, int i, int j) {
    return Poly::variable(ctx, i) - Poly::variable(ctx, j);
}

} // namespace ht
