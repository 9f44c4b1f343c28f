#include "qp/tensor.hpp"

#include <functional>
#include <sstream>

namespace qp {

Permutation Permutation::identity(int n) {
    Permutation p;
    p.img.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p.img[static_cast<size_t>(i)] = i;
    return p;
}

Permutation Permutation::cycle(int n, const std::vector<int>& cyc) {
    Permutation p = identity(n);
    for (size_t i = 0; i < cyc.size(); ++i) {
        int from = cyc[i] - 1;
        int to = cyc[(i + 1) % cyc.size()] - 1;
        p.img.at(static_cast<size_t>(from)) = to;
    }
    return p;
}

Permutation Permutation::inverse() const {
    Permutation p = identity(size());
    for (int i = 0; i < size(); ++i) p.img[static_cast<size_t>(img[static_cast<size_t>(i)])] = i;
    return p;
}

Permutation operator*(const Permutation& s, const Permutation& t) {
    Permutation p = Permutation::identity(s.size());
    for (int i = 0; i < s.size(); ++i)
        p.img[static_cast<size_t>(i)] = s.img[static_cast<size_t>(t.img[static_cast<size_t>(i)])];
    return p;
}

Tensor Tensor::from_words(QuiverPtr q, std::vector<Word> legs, Rat coeff) {
    Tensor t(std::move(q), static_cast<int>(legs.size()));
    t.add_term(legs, coeff);
    return t;
}

Tensor Tensor::outer(const std::vector<Element>& legs) {
    if (legs.empty()) throw AlgebraError("outer: no legs");
    Tensor t(legs.front().quiver(), static_cast<int>(legs.size()));
    std::vector<Word> ws(legs.size());
    Rat c;
    std::function<void(size_t, const Rat&)> rec = [&](size_t k, const Rat& acc) {
        if (k == legs.size()) {
            t.add_term(ws, acc);
            return;
        }
        for (const auto& [w, cw] : legs[k].terms()) {
            ws[k] = w;
            rec(k + 1, acc * cw);
        }
    };
    rec(0, Rat(1));
    return t;
}

void Tensor::add_term(const std::vector<Word>& legs, const Rat& c) {
    if (c == 0) return;
    if (static_cast<int>(legs.size()) != arity_) throw AlgebraError("tensor arity mismatch");
    auto [it, inserted] = terms_.emplace(legs, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Tensor& Tensor::operator+=(const Tensor& o) {
    if (quiver_ == nullptr) {
        quiver_ = o.quiver_;
        arity_ = o.arity_;
    }
    if (!o.is_zero() && arity_ != o.arity_) throw AlgebraError("tensor arity mismatch");
    for (const auto& [legs, c] : o.terms_) add_term(legs, c);
    return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
    if (quiver_ == nullptr) {
        quiver_ = o.quiver_;
        arity_ = o.arity_;
    }
    if (!o.is_zero() && arity_ != o.arity_) throw AlgebraError("tensor arity mismatch");
    for (const auto& [legs, c] : o.terms_) add_term(legs, -c);
    return *this;
}

Tensor& Tensor::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [legs, coeff] : terms_) coeff *= c;
    return *this;
}

Tensor Tensor::mul_leg_left(int leg, const Element& x) const {
    Tensor out(quiver_, arity_);
    for (const auto& [legs, c] : terms_) {
        Element prod = multiply(x, Element::single(quiver_, legs[static_cast<size_t>(leg)]));
        for (const auto& [w, cw] : prod.terms()) {
            std::vector<Word> nl = legs;
            nl[static_cast<size_t>(leg)] = w;
            out.add_term(nl, c * cw);
        }
    }
    return out;
}

Tensor Tensor::mul_leg_right(int leg, const Element& x) const {
    Tensor out(quiver_, arity_);
    for (const auto& [legs, c] : terms_) {
        Element prod = multiply(Element::single(quiver_, legs[static_cast<size_t>(leg)]), x);
        for (const auto& [w, cw] : prod.terms()) {
            std::vector<Word> nl = legs;
            nl[static_cast<size_t>(leg)] = w;
            out.add_term(nl, c * cw);
        }
    }
    return out;
}

Element Tensor::leg_element(const std::vector<Word>& legs, int leg) const {
    return Element::single(quiver_, legs.at(static_cast<size_t>(leg)));
}

Tensor Tensor::flip_signed() const {
    if (arity_ != 2) throw AlgebraError("flip needs arity 2");
    return apply_permutation(Permutation::cycle(2, {1, 2}), *this, true);
}

Element Tensor::collapse() const {
    Element out(quiver_);
    for (const auto& [legs, c] : terms_) {
        Element prod = Element::single(quiver_, legs[0]);
        for (size_t k = 1; k < legs.size(); ++k) prod = multiply(prod, Element::single(quiver_, legs[k]));
        out += c * prod;
    }
    return out;
}

Tensor Tensor::collapse_legs(int i) const {
    if (i < 0 || i + 1 >= arity_) throw AlgebraError("collapse_legs: bad index");
    Tensor out(quiver_, arity_ - 1);
    for (const auto& [legs, c] : terms_) {
        Element prod = multiply(Element::single(quiver_, legs[static_cast<size_t>(i)]),
                                Element::single(quiver_, legs[static_cast<size_t>(i) + 1]));
        for (const auto& [w, cw] : prod.terms()) {
            std::vector<Word> nl;
            nl.reserve(static_cast<size_t>(arity_) - 1);
            for (int k = 0; k < arity_; ++k) {
                if (k == i) nl.push_back(w);
                else if (k != i + 1) nl.push_back(legs[static_cast<size_t>(k)]);
            }
            out.add_term(nl, c * cw);
        }
    }
    return out;
}

Element Tensor::project(int leg, const std::vector<Word>& fixed_other) const {
    Element out(quiver_);
    for (const auto& [legs, c] : terms_) {
        bool match = true;
        size_t fi = 0;
        for (int k = 0; k < arity_ && match; ++k) {
            if (k == leg) continue;
            match = legs[static_cast<size_t>(k)] == fixed_other.at(fi++);
        }
        if (match) out.add_term(legs[static_cast<size_t>(leg)], c);
    }
    return out;
}

Tensor apply_permutation(const Permutation& s, const Tensor& x, bool koszul_signed) {
    if (s.size() != x.arity()) throw AlgebraError("permutation size does not match tensor arity");
    Permutation sinv = s.inverse();
    Tensor out(x.quiver(), x.arity());
    for (const auto& [legs, c] : x.terms()) {
        std::vector<Word> nl(legs.size());
        for (int k = 0; k < x.arity(); ++k)
            nl[static_cast<size_t>(k)] = legs[static_cast<size_t>(sinv.img[static_cast<size_t>(k)])];
        Rat coeff = c;
        if (koszul_signed) {
            // t = sum over output positions k < l that came from swapped
            // inputs, of the product of the degrees involved.
            long t = 0;
            for (int k = 0; k < x.arity(); ++k) {
                for (int l = k + 1; l < x.arity(); ++l) {
                    int ik = sinv.img[static_cast<size_t>(k)];
                    int il = sinv.img[static_cast<size_t>(l)];
                    if (ik > il)
                        t += static_cast<long>(word_degree(legs[static_cast<size_t>(ik)])) *
                             word_degree(legs[static_cast<size_t>(il)]);
                }
            }
            if (t % 2 != 0) coeff = -coeff;
        }
        out.add_term(nl, coeff);
    }
    return out;
}

std::string to_display(const Tensor& t) {
    if (t.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [legs, c] : t.terms()) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << to_string(c) << " ";
        for (size_t k = 0; k < legs.size(); ++k) {
            if (k) os << " (x) ";
            os << to_display(*t.quiver(), legs[k]);
        }
    }
    return os.str();
}

} // namespace qp
