#pragma once

// Multivariate polynomials over a ring tower A -> A[u...] -> A[u...][v...].
// A tower is an ordered list of variable blocks; block 0 is the base ring's
// variables. The term order is fixed once and for all: block-major
// lexicographic, later blocks most significant, and within a block the
// variables in list order (earlier = more significant).

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rescal/scalar.hpp"

namespace rescal {

using Mono = std::vector<std::uint32_t>;

template <class F>
class PolyTower {
  public:
    PolyTower(F field, std::vector<std::vector<std::string>> blocks)
        : field_(field), blocks_(std::move(blocks)) {
        if (blocks_.empty())
            throw std::invalid_argument("PolyTower: need at least one block");
        for (std::size_t b = 0; b < blocks_.size(); ++b)
            for (const auto& name : blocks_[b]) {
                if (index_.count(name))
                    throw std::invalid_argument(
                        "PolyTower: duplicate variable " + name);
                index_[name] = names_.size();
                names_.push_back(name);
                block_of_.push_back(b);
            }
        // significance order: last block first, list order within a block
        for (std::size_t b = blocks_.size(); b-- > 0;)
            for (const auto& name : blocks_[b])
                sig_.push_back(index_.at(name));
    }

    const F& field() const { return field_; }
    std::size_t n_vars() const { return names_.size(); }
    std::size_t n_blocks() const { return blocks_.size(); }
    const std::vector<std::vector<std::string>>& blocks() const {
        return blocks_;
    }
    const std::string& var_name(std::size_t v) const { return names_[v]; }
    std::size_t block_of(std::size_t v) const { return block_of_[v]; }
    bool has_var(const std::string& name) const { return index_.count(name); }
    std::size_t var_index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            throw std::invalid_argument("PolyTower: unknown variable " + name);
        return it->second;
    }
    /// Global indices of the variables of one block, in list order.
    std::vector<std::size_t> block_vars(std::size_t b) const {
        std::vector<std::size_t> out;
        for (const auto& n : blocks_[b]) out.push_back(index_.at(n));
        return out;
    }
    /// Variables of blocks lo..hi inclusive.
    std::vector<std::size_t> vars_in_blocks(std::size_t lo,
                                            std::size_t hi) const {
        std::vector<std::size_t> out;
        for (std::size_t b = lo; b <= hi && b < blocks_.size(); ++b)
            for (const auto& n : blocks_[b]) out.push_back(index_.at(n));
        return out;
    }

    /// Strict less-than in the fixed term order.
    bool mono_less(const Mono& a, const Mono& b) const {
        for (std::size_t v : sig_) {
            if (a[v] != b[v]) return a[v] < b[v];
        }
        return false;
    }

  private:
    F field_;
    std::vector<std::vector<std::string>> blocks_;
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::size_t> block_of_;
    std::vector<std::size_t> sig_;
};

template <class F>
using TowerPtr = std::shared_ptr<const PolyTower<F>>;

template <class F>
TowerPtr<F> make_tower(F field, std::vector<std::vector<std::string>> blocks) {
    return std::make_shared<const PolyTower<F>>(field, std::move(blocks));
}

inline std::uint32_t mono_total_degree(const Mono& m) {
    return std::accumulate(m.begin(), m.end(), std::uint32_t{0});
}

inline bool mono_divides(const Mono& a, const Mono& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
    Mono out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Mono mono_div(const Mono& a, const Mono& b) {
    Mono out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        assert(a[i] >= b[i]);
        out[i] = a[i] - b[i];
    }
    return out;
}

inline Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

template <class F>
class Poly {
  public:
    using Elem = typename F::Elem;

    struct TermLess {
        const PolyTower<F>* tower;
        bool operator()(const Mono& a, const Mono& b) const {
            return tower->mono_less(a, b);
        }
    };
    using TermMap = std::map<Mono, Elem, TermLess>;

    explicit Poly(TowerPtr<F> tower)
        : tower_(std::move(tower)), terms_(TermLess{tower_.get()}) {}

    static Poly zero(TowerPtr<F> t) { return Poly(t); }
    static Poly constant(TowerPtr<F> t, Elem c) {
        Poly p(t);
        if (!t->field().is_zero(c)) p.terms_.emplace(Mono(t->n_vars(), 0), c);
        return p;
    }
    static Poly from_int(TowerPtr<F> t, long n) {
        return constant(t, t->field().from_int(n));
    }
    static Poly variable(TowerPtr<F> t, const std::string& name) {
        return variable(t, t->var_index(name));
    }
    static Poly variable(TowerPtr<F> t, std::size_t v) {
        Mono m(t->n_vars(), 0);
        m[v] = 1;
        return monomial(t, m, t->field().one());
    }
    static Poly monomial(TowerPtr<F> t, const Mono& m, Elem c) {
        Poly p(t);
        if (!t->field().is_zero(c)) p.terms_.emplace(m, c);
        return p;
    }

    const TowerPtr<F>& tower() const { return tower_; }
    const F& field() const { return tower_->field(); }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t n_terms() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 &&
                mono_total_degree(terms_.begin()->first) == 0);
    }
    Elem constant_value() const {
        if (terms_.empty()) return field().zero();
        if (!is_constant())
            throw std::domain_error("Poly: not a constant");
        return terms_.begin()->second;
    }

    /// Leading (term-order-largest) monomial; polynomial must be nonzero.
    const Mono& leading_mono() const {
        if (terms_.empty()) throw std::domain_error("Poly: zero has no LM");
        return terms_.rbegin()->first;
    }
    const Elem& leading_coeff() const {
        if (terms_.empty()) throw std::domain_error("Poly: zero has no LC");
        return terms_.rbegin()->second;
    }

    long total_degree() const {
        long d = -1;
        for (const auto& [m, c] : terms_)
            d = std::max(d, static_cast<long>(mono_total_degree(m)));
        return d;
    }
    long degree_in(std::size_t v) const {
        long d = -1;
        for (const auto& [m, c] : terms_)
            d = std::max(d, static_cast<long>(m[v]));
        return d;
    }
    /// Total degree restricted to a subset of variables.
    long degree_in_vars(const std::vector<std::size_t>& vars) const {
        long d = -1;
        for (const auto& [m, c] : terms_) {
            long s = 0;
            for (auto v : vars) s += m[v];
            d = std::max(d, s);
        }
        return d;
    }
    bool uses_var(std::size_t v) const {
        for (const auto& [m, c] : terms_)
            if (m[v] > 0) return true;
        return false;
    }
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        auto d = mono_total_degree(terms_.begin()->first);
        for (const auto& [m, c] : terms_)
            if (mono_total_degree(m) != d) return false;
        return true;
    }

    void add_term(const Mono& m, const Elem& c) {
        if (field().is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (field().is_zero(it->second)) terms_.erase(it);
        }
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        check_same_tower(a, b);
        Poly out(a);
        for (const auto& [m, c] : b.terms_) out.add_term(m, c);
        return out;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        check_same_tower(a, b);
        Poly out(a);
        for (const auto& [m, c] : b.terms_)
            out.add_term(m, a.field().neg(c));
        return out;
    }
    friend Poly operator-(const Poly& a) {
        Poly out(a.tower_);
        for (const auto& [m, c] : a.terms_)
            out.terms_.emplace(m, a.field().neg(c));
        return out;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        check_same_tower(a, b);
        Poly out(a.tower_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                out.add_term(mono_mul(ma, mb), ca * cb);
        return out;
    }
    Poly scaled(const Elem& c) const {
        Poly out(tower_);
        if (field().is_zero(c)) return out;
        for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
        return out;
    }
    Poly pow(unsigned e) const {
        Poly out = from_int(tower_, 1);
        Poly base(*this);
        while (e) {
            if (e & 1) out = out * base;
            base = (e >>= 1) ? base * base : base;
        }
        return out;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        check_same_tower(a, b);
        if (a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second))
                return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Coefficient of v^k, as a polynomial with v struck out.
    Poly coeff_of(std::size_t v, std::uint32_t k) const {
        Poly out(tower_);
        for (const auto& [m, c] : terms_) {
            if (m[v] != k) continue;
            Mono m2 = m;
            m2[v] = 0;
            out.add_term(m2, c);
        }
        return out;
    }

    /// Ring map determined by images of the variables (all of them, into a
    /// possibly different tower over the same field type).
    Poly substitute(const TowerPtr<F>& target,
                    const std::vector<Poly>& images) const {
        if (images.size() != tower_->n_vars())
            throw std::invalid_argument("substitute: need one image per var");
        Poly out(target);
        for (const auto& [m, c] : terms_) {
            Poly term = Poly::constant(target, c);
            for (std::size_t v = 0; v < m.size(); ++v)
                if (m[v] > 0) term = term * images[v].pow(m[v]);
            out = out + term;
        }
        return out;
    }

    /// Canonical text form: terms in descending term order.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            std::string cs = field().str(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            if (neg) cs = cs.substr(1);
            bool has_vars = mono_total_degree(m) > 0;
            if (cs != "1" || !has_vars) os << cs;
            bool need_star = cs != "1" && has_vars;
            for (std::size_t v = 0; v < m.size(); ++v) {
                if (m[v] == 0) continue;
                if (need_star) os << "*";
                need_star = true;
                os << tower_->var_name(v);
                if (m[v] > 1) os << "^" << m[v];
            }
            first = false;
        }
        return os.str();
    }

  private:
    static void check_same_tower(const Poly& a, const Poly& b) {
        if (a.tower_.get() != b.tower_.get())
            throw std::invalid_argument("Poly: mixed towers");
    }

    TowerPtr<F> tower_;
    TermMap terms_;
};

}  // namespace rescal
