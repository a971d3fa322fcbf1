#include "rmtsym/orbits.hpp"

#include <queue>

namespace rmtsym {

namespace {

struct Generated {
  int x, y;
  bool flips_parity;
};

}  // namespace

OrbitSystem build_orbit_system(SymmetryClass cls, int n) {
  EnsembleSpec probe{cls, n, 0};
  validate_spec(probe);

  OrbitSystem sys;
  sys.cls = cls;
  sys.n = n;
  const int m = 2 * n;
  const std::size_t total = static_cast<std::size_t>(m) * m;
  sys.orbit_of.assign(total, -1);
  sys.parity_of.assign(total, 0);

  auto raw_index = [&](int x, int y) {
    return static_cast<std::size_t>(pos(x, n)) * m + pos(y, n);
  };

  for (std::size_t start = 0; start < total; ++start) {
    if (sys.orbit_of[start] >= 0) continue;

    const std::int32_t id = static_cast<std::int32_t>(sys.orbits.size());
    Orbit orbit;
    orbit.rep_x = site(static_cast<int>(start) / m, n);
    orbit.rep_y = site(static_cast<int>(start) % m, n);
    orbit.members.push_back({orbit.rep_x, orbit.rep_y, false});
    sys.orbit_of[start] = id;
    sys.parity_of[start] = 0;

    std::queue<std::pair<int, int>> frontier;
    frontier.push({orbit.rep_x, orbit.rep_y});
    bool real_constrained = false;

    while (!frontier.empty()) {
      auto [x, y] = frontier.front();
      frontier.pop();
      const std::uint8_t par = sys.parity_of[raw_index(x, y)];

      const auto sym = class_map(cls, x, y);
      const Generated images[2] = {{y, x, true}, {sym.first, sym.second, false}};
      for (const Generated& g : images) {
        const std::size_t e = raw_index(g.x, g.y);
        const std::uint8_t new_par = par ^ (g.flips_parity ? 1 : 0);
        if (sys.orbit_of[e] < 0) {
          sys.orbit_of[e] = id;
          sys.parity_of[e] = new_par;
          orbit.members.push_back({g.x, g.y, new_par != 0});
          frontier.push({g.x, g.y});
        } else if (sys.parity_of[e] != new_par) {
          // Two parities for one position close to v = conj(v).
          real_constrained = true;
        }
      }
    }

    orbit.reality =
        real_constrained ? OrbitReality::RealConstrained : OrbitReality::ComplexFree;
    sys.orbits.push_back(std::move(orbit));
  }

  return sys;
}

int free_parameter_count(const OrbitSystem& sys) {
  int count = 0;
  for (const Orbit& o : sys.orbits)
    count += (o.reality == OrbitReality::ComplexFree) ? 2 : 1;
  return count;
}

}  // namespace rmtsym
