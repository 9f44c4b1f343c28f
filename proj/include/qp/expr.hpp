#pragma once

#include "qp/tensor.hpp"

namespace qp {

// Text grammar for elements and tensors:
//   sum    ::= ['-'] term (('+'|'-') term)*
//   term   ::= [rational] factor ('*' factor)*
//   factor ::= e(INT) | inv(ID) | D(ID) | d(ID) | ID | rational | '(' sum ')'
//   tensor legs are separated by '@' (the UTF-8 tensor sign is accepted too)
// A '*' directly following an identifier and not followed by a name
// character spells a starred arrow id ("t**t" is t* times t).
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
          line(l), column(c) {}
};

Element parse_element(const QuiverPtr& q, const std::string& text);
Tensor parse_tensor(const QuiverPtr& q, const std::string& text);

// Canonical serialization; parse(serialize(x)) == x.
std::string serialize(const Element& x);
std::string serialize(const Tensor& t);

} // namespace qp
