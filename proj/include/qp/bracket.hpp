#pragma once

#include <map>
#include <utility>

#include "qp/normalform.hpp"
#include "qp/tensor.hpp"

namespace qp {

// Shared evaluator for double brackets presented on letters. Extension to
// words uses the graded Leibniz rule in the second argument, graded
// antisymmetry for the first, and the localization rule
//   {{x, s}} = -s {{x, b b*}}' ox {{x, b b*}}'' s    (s = inv(b))
// so tables stay finite. `shift` is 1 for degree -1 brackets (Schouten,
// Koszul) and 0 for brackets on the path algebra; all Koszul signs below
// use the shifted degree.
class BracketEngine {
public:
    explicit BracketEngine(QuiverPtr q, int shift) : quiver_(std::move(q)), shift_(shift) {}
    virtual ~BracketEngine() = default;

    const QuiverPtr& quiver() const { return quiver_; }
    int shift() const { return shift_; }

    Tensor bracket(const Element& x, const Element& y);
    Tensor bracket_words(const Word& x, const Word& y);

    // {{x, t}}_L on an arity-k tensor: bracket into the first leg.
    Tensor nested_left(const Element& x, const Tensor& t);

    // m o {{-,-}}
    Element single(const Element& x, const Element& y);

protected:
    // Both arguments are single non-inverse letters.
    virtual Tensor base(const Letter& x, const Letter& y) = 0;

private:
    QuiverPtr quiver_;
    int shift_;
    std::map<std::pair<Word, Word>, Tensor> memo_;
};

// A double bracket on the (localized) path algebra, presented by its values
// on ordered generator pairs. Only pairs (a,b) with a <= b in arrow order
// are stored; the other half is produced by antisymmetry.
class DoubleBracketTable {
public:
    explicit DoubleBracketTable(QuiverPtr q) : quiver_(std::move(q)) {}

    const QuiverPtr& quiver() const { return quiver_; }

    // Validates endpoint compatibility (value' : t(b)->h(a), value'' : t(a)->h(b)),
    // degree-0 legs, and antisymmetry on the diagonal.
    void set_value(const std::string& a, const std::string& b, const Tensor& value);
    void set_value(int a, int b, const Tensor& value);
    // Stores a raw generator value without the consistency validation (for
    // probing deliberately broken tables).
    void set_value_unchecked(int a, int b, const Tensor& value) { values_[{a, b}] = value; }

    // {{a,b}} for arrow indices, antisymmetry applied as needed.
    Tensor generator_value(int a, int b) const;

    const std::map<std::pair<int, int>, Tensor>& stored() const { return values_; }

private:
    QuiverPtr quiver_;
    std::map<std::pair<int, int>, Tensor> values_;
};

class TableBracket final : public BracketEngine {
public:
    explicit TableBracket(const DoubleBracketTable& table)
        : BracketEngine(table.quiver(), 0), table_(&table) {}

protected:
    Tensor base(const Letter& x, const Letter& y) override;

private:
    const DoubleBracketTable* table_;
};

Tensor evaluate_double_bracket(const DoubleBracketTable& T, const Element& x, const Element& y);
Element single_bracket(const DoubleBracketTable& T, const Element& x, const Element& y);

// {{a,{{b,c}}}}_L + tau_(123) {{b,{{c,a}}}}_L + tau_(132) {{c,{{a,b}}}}_L.
Tensor triple_bracket(const DoubleBracketTable& T, const Element& a, const Element& b, const Element& c);

// Generator elements of the (localized) path algebra: arrows and inverse
// letters. These are the triples double-bracket checks range over.
std::vector<Element> algebra_generators(const QuiverPtr& q);

} // namespace qp
