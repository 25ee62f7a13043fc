#include "vmeander/invariants.hpp"

#include <cstdlib>
#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>
#include <string>
#include <vector>

namespace vmeander {

int writhe(const GaussCode& code) {
  int w = 0;
  for (const Chord& c : code.chords()) w += c.sign;
  return w;
}

int odd_writhe(const GaussCode& code) {
  int w = 0;
  for (const Chord& c : code.chords()) {
    if (chord_parity(code, c.id) == Parity::Odd) w += c.sign;
  }
  return w;
}

int chord_index(const GaussCode& code, const Chord& chord) {
  const std::size_t size = code.size();
  const auto in_arc = [&](std::size_t x) {
    // strictly between the over and the under endpoint, walking forwards
    const std::size_t span = (chord.pos_under + size - chord.pos_over) % size;
    const std::size_t off = (x + size - chord.pos_over) % size;
    return off > 0 && off < span;
  };
  int index = 0;
  for (const Chord& d : code.chords()) {
    if (d.id == chord.id) continue;
    const bool over_in = in_arc(d.pos_over);
    const bool under_in = in_arc(d.pos_under);
    if (over_in == under_in) continue;
    index += under_in ? d.sign : -d.sign;
  }
  return index;
}

LaurentPoly affine_index_polynomial(const GaussCode& code) {
  LaurentPoly p;
  for (const Chord& c : code.chords()) {
    p.add_term(chord_index(code, c), c.sign);
    p.add_term(0, -c.sign);
  }
  return p;
}

namespace {

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

LaurentPoly kauffman_bracket(const GaussCode& code, int cap) {
  const int n = code.chord_count();
  if (n > cap) {
    throw CapExceeded("f-polynomial needs " + std::to_string(n) + " chords, cap is " +
                      std::to_string(cap));
  }
  if (n == 0) return LaurentPoly::constant(1);
  const int size = static_cast<int>(code.size());
  const auto chords = code.chords();
  // Arc i runs from record i to record i+1. At a chord with endpoints p<q the
  // oriented smoothing joins arc p-1 with arc q and arc q-1 with arc p; the
  // other smoothing joins p-1 with q-1 and p with q. For a positive crossing
  // the oriented smoothing is the A-smoothing.
  std::vector<std::vector<long long>> counts(n + 1, std::vector<long long>(size + 1, 0));
  std::vector<int> parent(size);
  for (unsigned long state = 0; state < (1UL << n); ++state) {
    std::iota(parent.begin(), parent.end(), 0);
    int components = size;
    int a_count = 0;
    const auto join = [&](int x, int y) {
      x = find(parent, x);
      y = find(parent, y);
      if (x != y) {
        parent[x] = y;
        --components;
      }
    };
    for (int k = 0; k < n; ++k) {
      const Chord& c = chords[k];
      const bool a_smoothing = (state >> k) & 1UL;
      if (a_smoothing) ++a_count;
      const bool oriented = a_smoothing == (c.sign > 0);
      const int p = static_cast<int>(c.first());
      const int q = static_cast<int>(c.second());
      const int pm = (p + size - 1) % size;
      const int qm = q - 1;
      if (oriented) {
        join(pm, q);
        join(qm, p);
      } else {
        join(pm, qm);
        join(p, q);
      }
    }
    ++counts[a_count][components];
  }
  const LaurentPoly loop = LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1);
  std::vector<LaurentPoly> loop_pow{LaurentPoly::constant(1)};
  for (int i = 1; i <= size; ++i) loop_pow.push_back(loop_pow.back() * loop);
  LaurentPoly bracket;
  for (int a = 0; a <= n; ++a) {
    for (int l = 1; l <= size; ++l) {
      if (counts[a][l] == 0) continue;
      bracket += LaurentPoly::monomial(a - (n - a), counts[a][l]) * loop_pow[l - 1];
    }
  }
  return bracket;
}

LaurentPoly f_polynomial(const GaussCode& code, int cap) {
  const int w = writhe(code);
  // (-A^3)^(-w)
  const LaurentPoly::Coeff sign = (w % 2 == 0) ? 1 : -1;
  return LaurentPoly::monomial(-3 * w, sign) * kauffman_bracket(code, cap);
}

InvariantReport invariant_report(const GaussCode& code, int cap) {
  InvariantReport r;
  r.writhe = writhe(code);
  r.odd_writhe = odd_writhe(code);
  r.affine_index = affine_index_polynomial(code);
  if (code.chord_count() <= cap) r.f_poly = f_polynomial(code, cap);
  return r;
}

namespace {

// Exact division by the loop value d = -A^2 - A^-2.
LaurentPoly divide_by_loop(const LaurentPoly& p) {
  LaurentPoly rest = p * LaurentPoly::monomial(2, -1);  // -A^2 p, to divide by A^4 + 1
  LaurentPoly q;
  const int floor = rest.is_zero() ? 0 : rest.terms().begin()->first;
  while (!rest.is_zero()) {
    const auto [e, c] = *rest.terms().rbegin();
    if (e - 4 < floor) throw std::logic_error("bracket state sum not divisible by the loop value");
    q.add_term(e - 4, c);
    rest.add_term(e, -c);
    rest.add_term(e - 4, -c);
  }
  return q;
}

LaurentPoly shifted(const LaurentPoly& p, int by) {
  LaurentPoly out;
  for (const auto& [e, c] : p.terms()) out.add_term(e + by, c);
  return out;
}

}  // namespace

LaurentPoly kauffman_bracket_frontier(const GaussCode& code, int max_frontier) {
  const int n = code.chord_count();
  if (n == 0) return LaurentPoly::constant(1);
  const int size = static_cast<int>(code.size());
  const auto chords = code.chords();
  // Arc i has a start end 2i at record i and a finish end 2i+1 at record i+1.
  const auto start = [&](int rec) { return 2 * ((rec % size + size) % size); };
  const auto finish = [&](int rec) { return 2 * ((rec % size + size) % size) + 1; };
  const auto mate_end = [](int x) { return x ^ 1; };
  std::vector<int> chord_of_rec(size);
  for (int k = 0; k < n; ++k) {
    chord_of_rec[chords[k].first()] = k;
    chord_of_rec[chords[k].second()] = k;
  }
  // Processing order: greedily keep the frontier small.
  std::vector<char> done(n, 0);
  std::vector<int> order;
  {
    std::vector<int> touched(size, 0);  // processed ends per arc
    for (int step = 0; step < n; ++step) {
      int best = -1, best_width = 0;
      for (int k = 0; k < n; ++k) {
        if (done[k]) continue;
        const int p = static_cast<int>(chords[k].first());
        const int q = static_cast<int>(chords[k].second());
        std::vector<int> arcs{(p - 1 + size) % size, p, (q - 1 + size) % size, q};
        int delta = 0;
        for (int a : arcs) delta += touched[a] == 0 ? 1 : -1;
        if (best < 0 || delta < best_width) {
          best = k;
          best_width = delta;
        }
      }
      done[best] = 1;
      order.push_back(best);
      const int p = static_cast<int>(chords[best].first());
      const int q = static_cast<int>(chords[best].second());
      for (int a : {(p - 1 + size) % size, p, (q - 1 + size) % size, q}) ++touched[a];
    }
  }

  std::vector<int> frontier;  // ends waiting at unprocessed crossings whose arc mate is processed
  using Key = std::string;     // mate position for every frontier end
  std::unordered_map<Key, LaurentPoly> states{{Key(), LaurentPoly::constant(1)}};
  const LaurentPoly loop = LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1);

  for (int k : order) {
    const Chord& c = chords[k];
    const int p = static_cast<int>(c.first());
    const int q = static_cast<int>(c.second());
    const std::array<int, 4> nodes{finish(p - 1), start(p), finish(q - 1), start(q)};
    const auto local = [&](int x) {
      for (int i = 0; i < 4; ++i) {
        if (nodes[i] == x) return i;
      }
      return -1;
    };
    std::unordered_map<int, int> fpos;
    for (std::size_t i = 0; i < frontier.size(); ++i) fpos[frontier[i]] = static_cast<int>(i);

    std::vector<int> next_frontier;
    for (int x : frontier) {
      if (local(x) < 0) next_frontier.push_back(x);
    }
    for (int x : nodes) {
      const int m = mate_end(x);
      if (!fpos.count(x) && local(m) < 0) next_frontier.push_back(m);
    }
    std::sort(next_frontier.begin(), next_frontier.end());
    next_frontier.erase(std::unique(next_frontier.begin(), next_frontier.end()), next_frontier.end());
    if (static_cast<int>(next_frontier.size()) > max_frontier) {
      throw CapExceeded("bracket frontier reached " + std::to_string(next_frontier.size()) + " ends");
    }
    std::unordered_map<int, int> npos;
    for (std::size_t i = 0; i < next_frontier.size(); ++i) npos[next_frontier[i]] = static_cast<int>(i);

    std::unordered_map<Key, LaurentPoly> next_states;
    for (const auto& [key, poly] : states) {
      // ext[i]: the global end reached from node i outside this crossing, or
      // -1 - j when the arc leads straight back to local node j.
      std::array<int, 4> ext{};
      for (int i = 0; i < 4; ++i) {
        const int x = nodes[i];
        auto it = fpos.find(x);
        const int far = it != fpos.end() ? frontier[static_cast<unsigned char>(key[it->second])]
                                         : mate_end(x);
        const int j = local(far);
        ext[i] = j >= 0 ? -1 - j : far;
      }
      for (int smoothing = 0; smoothing < 2; ++smoothing) {
        const bool a_smoothing = smoothing == 0;
        const bool oriented = a_smoothing == (c.sign > 0);
        std::array<int, 4> sp{};
        if (oriented) {
          sp = {3, 2, 1, 0};  // (p-1, q) and (q-1, p)
        } else {
          sp = {2, 3, 0, 1};  // (p-1, q-1) and (p, q)
        }
        std::array<char, 4> seen{};
        Key out(next_frontier.size(), '\0');
        // Surviving pairings between ends untouched by this crossing.
        for (int x : next_frontier) {
          auto it = fpos.find(x);
          if (it == fpos.end()) continue;
          const int m = frontier[static_cast<unsigned char>(key[it->second])];
          if (local(m) >= 0) continue;
          out[npos[x]] = static_cast<char>(npos[m]);
        }
        int cycles = 0;
        const auto walk = [&](int from) {
          int cur = from;
          while (true) {
            seen[cur] = 1;
            const int w = sp[cur];
            seen[w] = 1;
            if (ext[w] >= 0) return ext[w];
            cur = -1 - ext[w];
            if (seen[cur]) return -1;
          }
        };
        for (int i = 0; i < 4; ++i) {
          if (seen[i] || ext[i] < 0) continue;
          const int a = ext[i];
          const int b = walk(i);
          out[npos[a]] = static_cast<char>(npos[b]);
          out[npos[b]] = static_cast<char>(npos[a]);
        }
        for (int i = 0; i < 4; ++i) {
          if (seen[i]) continue;
          walk(i);
          ++cycles;
        }
        LaurentPoly term = shifted(poly, a_smoothing ? 1 : -1);
        for (int l = 0; l < cycles; ++l) term = term * loop;
        next_states[out] += term;
      }
    }
    states = std::move(next_states);
    frontier = std::move(next_frontier);
  }
  return divide_by_loop(states[Key()]);
}

LaurentPoly f_polynomial_frontier(const GaussCode& code, int max_frontier) {
  const int w = writhe(code);
  const LaurentPoly::Coeff sign = (w % 2 == 0) ? 1 : -1;
  return LaurentPoly::monomial(-3 * w, sign) * kauffman_bracket_frontier(code, max_frontier);
}

InvariantReport invariant_report_full(const GaussCode& code, int cap) {
  InvariantReport r = invariant_report(code, cap);
  if (!r.f_poly) r.f_poly = f_polynomial_frontier(code);
  return r;
}

int fpoly_cap_from_env() {
  if (const char* v = std::getenv("VMEANDER_FPOLY_CAP")) {
    char* end = nullptr;
    const long cap = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && cap >= 0 && cap <= 40) return static_cast<int>(cap);
  }
  return kDefaultFPolyCap;
}

}  // namespace vmeander
