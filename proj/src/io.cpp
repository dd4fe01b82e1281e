#include "symiso/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

namespace symiso {

json to_json(const FourierField& f) {
  json modes = json::array();
  const auto& c = f.coefficients();
  const int d = f.dim(), w = f.width();
  // Index L/2 is k = 0; indices above it hold one member of every conjugate pair.
  for (std::size_t p = c.size() / 2; p < c.size(); ++p) {
    if (c[p] == cplx(0.0, 0.0)) continue;
    json entry = json::array();
    std::size_t rem = p;
    std::vector<int> k(static_cast<std::size_t>(d));
    for (int a = d - 1; a >= 0; --a) {
      k[std::size_t(a)] = int(rem % std::size_t(w)) - f.bandwidth();
      rem /= std::size_t(w);
    }
    entry.push_back(k);
    entry.push_back(c[p].real());
    entry.push_back(c[p].imag());
    modes.push_back(std::move(entry));
  }
  return modes;
}

json to_json(const Generator& g) {
  const FourierHamiltonian U = g.U.warped() ? g.U.resampled() : g.U;
  const HarmonicPath H = g.H.warped() ? g.H.resampled() : g.H;
  json j;
  j["n"] = g.n();
  j["K"] = U.bandwidth();
  json times = json::array(), fourier = json::array(), harmonic = json::array();
  for (std::size_t t = 0; t < g.nodes(); ++t) {
    times.push_back(g.node_time(t));
    fourier.push_back(to_json(U.node_field(t)));
    harmonic.push_back(H.node_form(t).coeffs);
  }
  j["time_nodes"] = std::move(times);
  j["fourier"] = std::move(fourier);
  j["harmonic"] = std::move(harmonic);
  return j;
}

FourierField field_from_json(const json& j, int n) {
  int K = 0;
  for (const auto& m : j) {
    const auto k = m.at(0).get<std::vector<int>>();
    if (int(k.size()) != 2 * n) throw Error("fourier mode has the wrong number of indices");
    for (int v : k) K = std::max(K, std::abs(v));
  }
  FourierField f(n, K);
  for (const auto& m : j) {
    const auto k = m.at(0).get<std::vector<int>>();
    f.set_mode(k, cplx(m.at(1).get<double>(), m.at(2).get<double>()));
  }
  return f;
}

Generator generator_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  if (n < 1) throw Error("generator: n must be positive");
  const auto& fourier = j.at("fourier");
  const auto& harmonic = j.at("harmonic");
  if (fourier.size() != harmonic.size()) throw Error("generator: fourier and harmonic node counts differ");
  if (j.contains("time_nodes") && j["time_nodes"].size() != fourier.size())
    throw Error("generator: time_nodes does not match the node count");
  std::vector<FourierField> u;
  std::vector<HarmonicForm> h;
  for (std::size_t t = 0; t < fourier.size(); ++t) {
    u.push_back(field_from_json(fourier[t], n));
    auto lam = harmonic[t].get<std::vector<double>>();
    if (int(lam.size()) != 2 * n) throw Error("generator: harmonic form has the wrong size");
    h.emplace_back(std::move(lam));
  }
  return {FourierHamiltonian(u), HarmonicPath(h)};
}

Generator load_generator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open generator file " + path);
  return generator_from_json(json::parse(in));
}

void save_generator(const Generator& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json(g).dump(2) << '\n';
}

void write_trajectory_csv(std::ostream& os, const std::vector<double>& times, const std::vector<PointSet>& states) {
  if (times.size() != states.size()) throw Error("write_trajectory_csv: times and states differ in length");
  os << "t";
  if (!states.empty())
    for (std::size_t p = 0; p < states[0].size(); ++p)
      for (int a = 0; a < states[0].dim(); ++a) os << ",p" << p << "_x" << a + 1;
  os << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < times.size(); ++i) {
    os << times[i];
    for (std::size_t p = 0; p < states[i].size(); ++p)
      for (int a = 0; a < states[i].dim(); ++a) os << ',' << states[i].at(a, p);
    os << '\n';
  }
}

void write_delta_csv(std::ostream& os, const DeltaFunction& d, const PointSet& grid, const std::vector<double>& times) {
  os << "t,index";
  for (int a = 0; a < grid.dim(); ++a) os << ",x" << a + 1;
  os << ",delta\n" << std::setprecision(17);
  for (std::size_t j = 0; j < d.nodes(); ++j)
    for (std::size_t i = 0; i < grid.size(); ++i) {
      os << times[j] << ',' << i;
      for (int a = 0; a < grid.dim(); ++a) os << ',' << grid.at(a, i);
      os << ',' << d[j].values[i] << '\n';
    }
}

}  // namespace symiso
