#pragma once

#include <vector>

#include "qp/element.hpp"

namespace qp {

// Permutation of {1..n}, stored 0-based as images: s.img[i] = s(i+1)-1.
struct Permutation {
    std::vector<int> img;

    int size() const { return static_cast<int>(img.size()); }
    static Permutation identity(int n);
    // Cycle notation, e.g. cycle(3, {1,2,3}) is (123): 1->2->3->1.
    static Permutation cycle(int n, const std::vector<int>& cyc);
    Permutation inverse() const;
    friend Permutation operator*(const Permutation& s, const Permutation& t); // s after t
    friend bool operator==(const Permutation&, const Permutation&) = default;
};

// Q-linear combination of k-tuples of words; models A ox ... ox A valued
// bracket outputs. Legs are independently composable words.
class Tensor {
public:
    Tensor() = default;
    Tensor(QuiverPtr q, int arity) : quiver_(std::move(q)), arity_(arity) {}

    static Tensor zero(QuiverPtr q, int arity) { return Tensor(std::move(q), arity); }
    static Tensor from_words(QuiverPtr q, std::vector<Word> legs, Rat coeff = Rat(1));
    // Outer product of elements, one per leg.
    static Tensor outer(const std::vector<Element>& legs);

    const QuiverPtr& quiver() const { return quiver_; }
    int arity() const { return arity_; }
    const std::map<std::vector<Word>, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const std::vector<Word>& legs, const Rat& c);

    Tensor& operator+=(const Tensor& o);
    Tensor& operator-=(const Tensor& o);
    Tensor& operator*=(const Rat& c);
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(Tensor a, const Rat& c) { return a *= c; }
    friend Tensor operator*(const Rat& c, Tensor a) { return a *= c; }
    friend Tensor operator-(Tensor a) { return a *= Rat(-1); }
    friend bool operator==(const Tensor& a, const Tensor& b) { return a.terms_ == b.terms_; }

    // Multiply leg `leg` by an element, on the left or on the right.
    Tensor mul_leg_left(int leg, const Element& x) const;
    Tensor mul_leg_right(int leg, const Element& x) const;
    // Multiply leg `leg` by a word (no sign bookkeeping; words commute past
    // nothing here, outer action).
    Element leg_element(const std::vector<Word>& legs, int leg) const;

    // a -> a'' ox a' with the Koszul sign (only for arity 2).
    Tensor flip_signed() const;

    // m: collapse all legs by multiplication.
    Element collapse() const;
    // (m ox 1) / (1 ox m) style collapses: multiply legs [i, i+1] together.
    Tensor collapse_legs(int i) const;

    Element project(int leg, const std::vector<Word>& fixed_other) const;

private:
    QuiverPtr quiver_;
    int arity_ = 0;
    std::map<std::vector<Word>, Rat> terms_;
};

// tau_s (unsigned) and sigma_s (Koszul-signed): out[k] = in[s^{-1}(k)];
// sigma multiplies by (-1)^t with t summing degree products over inversions.
Tensor apply_permutation(const Permutation& s, const Tensor& x, bool koszul_signed);

std::string to_display(const Tensor& t);

} // namespace qp
