#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qp/quiver.hpp"
#include "qp/rational.hpp"

namespace qp {

// Letter kinds of the unified word algebra. One representation serves the
// path algebra A (arrows, inverses), the poly-vector algebra D_B A
// (derivation letters d/da, degree 1) and the form algebra Omega_B A
// (differential letters da, degree 1).
enum class LetterKind : unsigned char {
    Arrow = 0,   // a : t(a) -> h(a), degree 0
    Inverse = 1, // (e_{t(a)} + a a*)^{-1} : t(a) -> t(a), degree 0
    Deriv = 2,   // d/da : h(a) -> t(a), degree 1
    Diff = 3,    // da : t(a) -> h(a), degree 1
};

struct Letter {
    LetterKind kind;
    int arrow;

    friend auto operator<=>(const Letter&, const Letter&) = default;
};

int letter_source(const Quiver& q, const Letter& l);
int letter_target(const Quiver& q, const Letter& l);
inline int letter_degree(const Letter& l) {
    return (l.kind == LetterKind::Deriv || l.kind == LetterKind::Diff) ? 1 : 0;
}

// A basis word: either the idempotent e_vertex (letters empty) or a nonempty
// composable letter sequence.
struct Word {
    int vertex = -1;
    std::vector<Letter> letters;

    bool is_idempotent() const { return letters.empty(); }
    friend auto operator<=>(const Word&, const Word&) = default;
};

Word idem_word(int vertex);
Word letter_word(std::span<const Letter> letters);

int word_source(const Quiver& q, const Word& w);
int word_target(const Quiver& q, const Word& w);
bool word_closed(const Quiver& q, const Word& w);
int word_degree(const Word& w);
int word_grade(const Word& w, LetterKind kind); // number of letters of `kind`
bool word_composable(const Quiver& q, const Word& w);

// Q-linear combination of words over a fixed quiver.
class Element {
public:
    Element() = default;
    explicit Element(QuiverPtr q) : quiver_(std::move(q)) {}

    static Element zero(QuiverPtr q) { return Element(std::move(q)); }
    static Element idempotent(QuiverPtr q, int vertex);
    static Element unit(QuiverPtr q); // sum of all vertex idempotents
    static Element single(QuiverPtr q, Word w, Rat coeff = Rat(1));
    static Element arrow(QuiverPtr q, const std::string& id);
    static Element arrow(QuiverPtr q, int idx);
    static Element inverse(QuiverPtr q, int idx);
    static Element deriv(QuiverPtr q, int idx);
    static Element diff(QuiverPtr q, int idx);

    const QuiverPtr& quiver() const { return quiver_; }
    const std::map<Word, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Word& w, const Rat& c);

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Rat& c);

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, const Rat& c) { return a *= c; }
    friend Element operator*(const Rat& c, Element a) { return a *= c; }
    friend Element operator-(Element a) { return a *= Rat(-1); }
    friend Element operator*(const Element& a, const Element& b) { return multiply(a, b); }
    friend bool operator==(const Element& a, const Element& b) {
        return a.terms_ == b.terms_;
    }

    // Homogeneous in total degree / in grade of a given letter kind?
    bool homogeneous_degree(int* deg = nullptr) const;
    bool homogeneous_grade(LetterKind kind, int* grade = nullptr) const;
    int max_grade(LetterKind kind) const;
    Element grade_part(LetterKind kind, int grade) const;

    friend Element multiply(const Element& x, const Element& y);

private:
    QuiverPtr quiver_;
    std::map<Word, Rat> terms_;
};

// Word concatenation as elements (0 when not composable).
Element word_product(const QuiverPtr& q, const Word& x, const Word& y);

// Left/right idempotent filtering: e_i . x and x . e_i.
Element left_idem(const Element& x, int vertex);
Element right_idem(const Element& x, int vertex);

// xy - (-1)^{|x||y|} yx on homogeneous inputs.
Element graded_commutator(const Element& x, const Element& y);

void require_same_quiver(const Element& a, const Element& b);

std::string to_display(const Quiver& q, const Word& w);
std::string to_display(const Element& x);

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qp
