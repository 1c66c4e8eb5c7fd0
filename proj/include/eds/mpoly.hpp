#pragma once

// Sparse multivariate polynomials over Rat with a graded-lexicographic term
// order.  The term map iterates leading-term first, which makes to_string
// canonical and keeps exports/goldens byte-stable.

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"
#include "vartable.hpp"

namespace eds {

using Expo = std::vector<std::uint32_t>;

inline std::uint64_t expo_degree(const Expo& e) {
    std::uint64_t d = 0;
    for (auto x : e) d += x;
    return d;
}

// Graded-lex, descending: higher total degree first; ties broken by the first
// differing exponent (larger exponent of an earlier variable wins).
struct GrlexGreater {
    bool operator()(const Expo& a, const Expo& b) const {
        std::uint64_t da = expo_degree(a), db = expo_degree(b);
        if (da != db) return da > db;
        return a > b;  // lexicographic on exponent vectors
    }
};

class MPoly {
public:
    MPoly() = default;
    explicit MPoly(VarTablePtr vars) : vars_(std::move(vars)) {}

    static MPoly constant(VarTablePtr vars, const Rat& c) {
        MPoly p(std::move(vars));
        if (c != 0) p.terms_[Expo(p.vars_->size(), 0)] = c;
        return p;
    }
    static MPoly var(VarTablePtr vars, std::size_t i, std::uint32_t power = 1) {
        if (i >= vars->size()) throw std::out_of_range("variable index");
        MPoly p(std::move(vars));
        Expo e(p.vars_->size(), 0);
        e[i] = power;
        if (power == 0)
            p.terms_[Expo(p.vars_->size(), 0)] = 1;
        else
            p.terms_[e] = 1;
        return p;
    }

    const VarTablePtr& vars() const { return vars_; }
    const std::map<Expo, Rat, GrlexGreater>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && expo_degree(terms_.begin()->first) == 0);
    }
    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
        return terms_.begin()->second;
    }

    std::int64_t degree() const {
        if (terms_.empty()) return -1;
        return static_cast<std::int64_t>(expo_degree(terms_.begin()->first));
    }
    std::int64_t degree_in(std::size_t v) const {
        std::int64_t d = -1;
        for (const auto& [e, c] : terms_) d = std::max<std::int64_t>(d, e[v]);
        return d;
    }

    const Rat& coeff(const Expo& e) const {
        static const Rat zero(0);
        auto it = terms_.find(e);
        return it == terms_.end() ? zero : it->second;
    }

    void add_term(const Expo& e, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    MPoly operator+(const MPoly& o) const {
        check_vars(o);
        MPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    MPoly operator-(const MPoly& o) const {
        check_vars(o);
        MPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }
    MPoly operator*(const MPoly& o) const {
        check_vars(o);
        MPoly r(vars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Expo e = e1;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    MPoly operator*(const Rat& c) const {
        MPoly r(vars_);
        if (c == 0) return r;
        r.terms_ = terms_;
        for (auto& [e, x] : r.terms_) x *= c;
        return r;
    }
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }
    // Needed so Mat<MPoly> can skip structural zeros.
    bool operator==(const Rat& c) const {
        if (c == 0) return terms_.empty();
        return is_constant() && constant_value() == c;
    }

    MPoly pow(std::uint32_t k) const {
        MPoly r = constant(vars_, 1);
        MPoly base = *this;
        while (k) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    MPoly derivative(std::size_t v) const {
        MPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[v] == 0) continue;
            Expo d = e;
            d[v] -= 1;
            r.add_term(d, c * Rat(e[v]));
        }
        return r;
    }

    Rat evaluate(const std::vector<Rat>& point) const {
        if (point.size() != vars_->size())
            throw std::invalid_argument("evaluate: assignment size mismatch");
        Rat acc(0);
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    // Exact division (throws if the divisor does not divide evenly).  Single
    // divisor multivariate division: repeatedly cancel the leading term.
    MPoly exact_div(const MPoly& d) const {
        check_vars(d);
        if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
        MPoly rem = *this, quot(vars_);
        const auto& [dl, dc] = *d.terms_.begin();
        while (!rem.is_zero()) {
            const auto& [rl, rc] = *rem.terms_.begin();
            Expo q(rl.size());
            for (std::size_t i = 0; i < rl.size(); ++i) {
                if (rl[i] < dl[i]) throw std::domain_error("exact_div: not divisible");
                q[i] = rl[i] - dl[i];
            }
            Rat qc = rc / dc;
            MPoly qt(vars_);
            qt.terms_[q] = qc;
            quot += qt;
            rem -= qt * d;
            // Progress: the leading term strictly decreases in grlex order, so
            // the loop terminates; non-divisibility surfaces as the throw above.
        }
        return quot;
    }

    // Canonical rendering, leading term first: "x0^2*x1 - 1/2*x2 + 4".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rat a = c;
            if (first) {
                if (a < 0) {
                    out << "-";
                    a = -a;
                }
            } else {
                out << (c < 0 ? " - " : " + ");
                a = abs(c);
            }
            std::string mono = mono_str(e);
            if (mono.empty())
                out << rat_str(a);
            else {
                if (a != 1) out << rat_str(a) << "*";
                out << mono;
            }
            first = false;
        }
        return out.str();
    }

private:
    std::string mono_str(const Expo& e) const {
        std::ostringstream out;
        bool any = false;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (any) out << "*";
            out << vars_->name(i);
            if (e[i] > 1) out << "^" << e[i];
            any = true;
        }
        return out.str();
    }

    void check_vars(const MPoly& o) const {
        if (vars_ != o.vars_) throw std::logic_error("mixing polynomials from different variable tables");
    }

    VarTablePtr vars_;
    std::map<Expo, Rat, GrlexGreater> terms_;
};

inline MPoly operator*(const Rat& c, const MPoly& p) { return p * c; }

// --- expression parser -------------------------------------------------
//
// Grammar (whitespace-insensitive):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := rational | varname | '(' expr ')' | '-' factor
// Variable names must exist in the table; anything else is rejected.

class PolyParser {
public:
    PolyParser(std::string text, VarTablePtr vars)
        : text_(std::move(text)), vars_(std::move(vars)) {}

    MPoly parse() {
        MPoly p = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw std::invalid_argument("trailing garbage in polynomial: " + text_.substr(pos_));
        return p;
    }

private:
    MPoly expr() {
        MPoly p = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                p += term();
            } else if (peek() == '-') {
                ++pos_;
                p -= term();
            } else {
                return p;
            }
        }
    }

    MPoly term() {
        MPoly p = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                p *= factor();
            } else {
                return p;
            }
        }
    }

    MPoly factor() {
        MPoly base = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) throw std::invalid_argument("expected exponent after '^'");
            return base.pow(static_cast<std::uint32_t>(std::stoul(text_.substr(start, pos_ - start))));
        }
        return base;
    }

    MPoly atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            MPoly p = expr();
            skip_ws();
            if (peek() != ')') throw std::invalid_argument("expected ')'");
            ++pos_;
            return p;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
                ++pos_;
            return MPoly::constant(vars_, parse_rat(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            auto idx = vars_->index_of(name);
            if (!idx) throw std::invalid_argument("unknown variable: " + name);
            return MPoly::var(vars_, *idx);
        }
        throw std::invalid_argument("unexpected character in polynomial: " +
                                    (pos_ < text_.size() ? text_.substr(pos_, 1) : "<eof>"));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string text_;
    VarTablePtr vars_;
    std::size_t pos_ = 0;
};

inline MPoly parse_poly(const std::string& text, VarTablePtr vars) {
    return PolyParser(text, std::move(vars)).parse();
}

}  // namespace eds
