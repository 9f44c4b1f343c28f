#pragma once

#include "qp/structures.hpp"

namespace qp {

// Gluing vertex w onto vertex v. The target quiver keeps every arrow (ids
// unchanged) with heads/tails relabeled w -> v; elements transport letter
// by letter.
struct FusionMap {
    QuiverPtr source;
    int kept = 0;    // v
    int removed = 0; // w
    QuiverPtr target;
};

FusionMap fuse_quiver(const QuiverPtr& q, int v, int w);

// Letterwise transport along the generator dictionary (also drops the
// connector letters of a fusion ambient when present).
Element transport(const FusionMap& f, const Element& x);
Tensor transport(const FusionMap& f, const Tensor& t);

// P^ff = P^f - 1/2 E_v^f E_w^f when fusing a quasi-Poisson bivector;
// plain transport otherwise.
Element fuse_polyvector(const Element& P, const FusionMap& f, bool quasi_bivector);

// Additive: transported componentwise sum (mu_v + mu_w lands at v).
// Multiplicative: the fused-vertex component becomes Phi_v^f Phi_w^f.
Element fuse_moment(const Element& m, const FusionMap& f, MomentKind kind);

HamiltonianStructure fuse_structure(const HamiltonianStructure& s, int v, int w);

// The ambient algebra A-bar of the fusion: q with connector arrows
// c: v -> w and c': w -> v adjoined, subject to c c' = e_v, c' c = e_w.
struct FusionAmbient {
    QuiverPtr abar;
    int c_vw = -1;
    int c_wv = -1;
};
FusionAmbient fusion_ambient(const QuiverPtr& q, int v, int w);
Element embed_in_ambient(const QuiverPtr& abar, const Element& x);

// Tr(x) = sum_i e q_i x p_i e for a decomposition 1 = sum_i p_i e q_i
// (validated by multiplication). Result in localize normal form.
Element trace_map(const Element& x, const Element& e,
                  const std::vector<std::pair<Element, Element>>& decomposition);

} // namespace qp
