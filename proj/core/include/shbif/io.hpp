// Wire formats: JSON for trig polynomials, manifolds, reduced fields, and
// classification rows; CSV for sweeps and trajectories. Rationals serialize
// as decimal num/den strings; floats print with 17 significant digits, so
// every format re-ingests losslessly.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shbif/dynamics.hpp"
#include "shbif/manifold.hpp"
#include "shbif/pde.hpp"
#include "shbif/reduced_field.hpp"
#include "shbif/trigpoly.hpp"

namespace shbif::io {

// A document failed to parse or violates its schema.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest text that round-trips the double exactly (printf %.17g).
std::string fmt17(double v);

// {"kind": "rational"|"float", "terms": [{"wave", "k", "num", "den"}, ...]}.
// Float coefficients are dyadic, so both kinds use exact num/den strings.
std::string trig_json(const TrigQ& p, int indent = 2);
std::string trig_json(const TrigF& p, int indent = 2);
std::string trig_kind(const std::string& text);
TrigQ trig_rational_from_json(const std::string& text);
TrigF trig_float_from_json(const std::string& text);

// {"lambda": string, "order": int, "form": "ansatz"|"graph",
//  "G1": [{"a", "b", "num", "den"}, ...], "G2": [...]}.
std::string reduced_field_json(const ReducedVectorField& f, int indent = 2);
ReducedVectorField reduced_field_from_json(const std::string& text);

// {"lambda0": string, "order": int, "trunc": int,
//  "psi": [{"a", "b", "wave", "k", "num", "den"}, ...]}.
std::string manifold_json(const CenterManifoldMap& m, int indent = 2);
CenterManifoldMap manifold_from_json(const std::string& text);

// One JSON row {"lambda": float, "r": float, "verdict": string,
// "r_star": float|null}, compact (no indent), for .jsonl streams.
std::string classification_row_json(const BlockClassification& c,
                                    std::optional<double> r_star);

// "lambda,dist_H,r_star_reduced,amplitude_newton,block_verdict,..." rows;
// missing optionals are empty fields.
std::string sweep_csv(const std::vector<SweepRow>& rows);

// "t,norm,V" rows sampled along a trajectory.
std::string trajectory_csv(const PdeTrajectory& traj, double lambda);

}  // namespace shbif::io
