#pragma once
#include <optional>

#include "core/param_model.hpp"
#include "core/pencil.hpp"
#include "core/ratfunc.hpp"

namespace qrtkit {

enum class MapKind { ThreePoint, AsymmetricPair, KStep };

// Birational plane map.
//
// ThreePoint / KStep: the state (u,v) holds (x_{n-1}, x_n) and a forward step
// sends it to (x_n, update(u,v)). back_update gives x_{n-1} as a function of
// (x_{n+1}, x_n) for the same relation; when the relation is symmetric under
// reflection (update involutive in its first slot) the two coincide.
//
// AsymmetricPair: the state holds (X_n, Y_n); a forward step applies the
// horizontal half, X' = h_update(X, Y), then the vertical half at the new
// abscissa, Y' = v_update(X', Y). h_back and v_back undo the halves in the
// opposite order.
//
// Indexed coefficients f[n+k] in any rule are bound per step through params;
// the index n is the lattice time of the current state's v component.
// reversed marks a spec whose forward step walks the lattice downward.
struct MapSpec {
  MapKind kind = MapKind::ThreePoint;
  Sym u = 0, v = 0;
  RatFunc update, back_update;
  RatFunc h_update, v_update, h_back, v_back;
  bool reversed = false;
  int stride = 1;
  ParamModel params;
};

// Vieta root swap on the pencil member through a generic point. The branch
// order is horizontal involution first, then vertical.
MapSpec map_from_invariant(const QRTInvariant& inv, bool inverse_branch = false);

MapSpec inverse_map(const MapSpec& m);

// Direct constructors; the explicit inverse rules are derived and stored.
MapSpec three_point_map(const RatFunc& update, Sym u, Sym v, ParamModel params = {});
MapSpec asymmetric_map(const RatFunc& h, const RatFunc& v_upd, Sym u, Sym v, ParamModel params = {});

// Symbolic state with its lattice time (the index of the v component for
// three-point maps, the common index for pairs).
struct SymState {
  RatFunc a, b;
  long tau = 0;
};

SymState step_symbolic(const MapSpec& m, const SymState& s, bool backward = false);

// K(next state) == K(state) as an identity of rational functions.
bool check_invariant(const MapSpec& m, const QRTInvariant& inv);

// Invariant of the k-fold subsampled lattice, k in {1,2,3}: intermediate
// points are solved from the map relation and eliminated.
QRTInvariant multi_step_invariant(const MapSpec& m, const QRTInvariant& inv, int k);

enum class KeepVar { X, Y };

// Collapse an asymmetric pair to a three-point map for one variable.
MapSpec eliminate(const MapSpec& m, KeepVar keep);

// expr(x) = rhs solved for x; nullopt unless expr is homographic in x with a
// nondegenerate linear solve.
std::optional<RatFunc> mobius_solve(const RatFunc& expr, Sym x, const RatFunc& rhs);

}  // namespace qrtkit
