#pragma once

#include "qp/element.hpp"
#include "qp/tensor.hpp"

namespace qp {

// Rewrites to a fixpoint of
//   inv(a) a a*  ->  e_{t(a)} - inv(a)
//   a a* inv(a)  ->  e_{t(a)} - inv(a)
// for every inverse letter, plus fg -> e / gf -> e for the quiver's unit
// pairs. Each step shortens the word, so this terminates. Leftmost rule
// first, so the result is deterministic (the system is not proven
// confluent; equality tests fall back to representation-space evaluation).
Element localize_normal_form(const Element& x);
Tensor localize_normal_form(const Tensor& t); // legwise

// Canonical representative modulo graded commutators: open words map to 0;
// a closed word is replaced by its minimal cyclic rotation, picking up the
// Koszul sign (-1)^{|prefix| |suffix|} per rotation step. If a word equals
// minus itself under some rotation its class is 0. Rotations that expose a
// localization redex are rewritten first.
Element necklace_normal_form(const Element& x);

} // namespace qp
