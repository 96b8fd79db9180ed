#pragma once

#include <string>

#include "gaugekit/gauge.hpp"
#include "gaugekit/maps.hpp"
#include "gaugekit/quotient.hpp"
#include "gaugekit/solver.hpp"
#include "gaugekit/spaces.hpp"

namespace gaugekit {

// Parsers validate the document shape before any computation and raise
// ValidationError with a path-precise message ("basis[2].entries[0][1]: ...").

/// {"dim": n, "entries": [[[re,im], ...], ...]} row-major.
HermitianMatrix parse_hermitian(const std::string& text);
std::string to_json(const HermitianMatrix& a);

/// {"ambient_dim": m, "basis": [matrix...], "unit": index|null}
OperatorSpace parse_operator_space(const std::string& text);
std::string to_json(const OperatorSpace& v);

/// {"dim": d, "generators": [[...]...], "norm": {"kind":"sup"} |
///  {"kind":"polytope","vertices":[[...], ...]}}
PolySpace parse_poly_space(const std::string& text);
std::string to_json(const PolySpace& p);

/// Either space form, keyed on the fields present.
Space parse_space(const std::string& text);

/// {"ideal_basis": [matrix...]}
IdealSpec parse_ideal(const std::string& text);

/// {"domain": space|{"file": path}, "codomain": ..., "matrix": [[...], ...]}
LinearMap parse_linear_map(const std::string& text, const std::string& base_dir);

std::string to_json(const SolveReport& r);
std::string to_json(const GaugeAxiomReport& r);
std::string to_json(const QuotientGaugeValue& q);
std::string to_json(const IdealVerdict& v);

} // namespace gaugekit
