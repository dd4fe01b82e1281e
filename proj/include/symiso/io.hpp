#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "symiso/calculus.hpp"

namespace symiso {

using json = nlohmann::json;

/// {"n", "K", "time_nodes", "fourier": [[[k..., re, im], ...] per node], "harmonic": [[lambda...] per node]}.
/// Only one of each conjugate pair is written; warped generators are resampled on their nodes.
json to_json(const FourierField& f);
json to_json(const Generator& g);
FourierField field_from_json(const json& j, int n);
Generator generator_from_json(const json& j);

Generator load_generator(const std::string& path);
void save_generator(const Generator& g, const std::string& path);

/// t, then x_1..x_{2n} of every seed point (lifted coordinates).
void write_trajectory_csv(std::ostream& os, const std::vector<double>& times, const std::vector<PointSet>& states);

/// t, grid index, coordinates, value; one block per time node.
void write_delta_csv(std::ostream& os, const DeltaFunction& d, const PointSet& grid, const std::vector<double>& times);

}  // namespace symiso
