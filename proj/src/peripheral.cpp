// Copyright 2026 The cuspfill Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cuspfill/peripheral.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cuspfill/errors.hpp"

namespace cuspfill {

namespace {

// Subgroup A <= H as a subgroup of the free group on H's basis.
SubgroupGraph in_h_coordinates(const SubgroupGraph& h, const SubgroupGraph& a) {
  const int r = std::max<int>(1, static_cast<int>(h.rank()));
  std::vector<Word> gens;
  for (const auto& g : a.generators()) gens.push_back(h.rewrite_in_basis(g));
  return SubgroupGraph::from_generators(r, gens);
}

// The ShortLex-lesser of w and w^-1.
Word orient(const Word& w) { return std::min(w, invert(w)); }

// Least cyclic rotation of the cyclic core of w or of its inverse.
Word least_rotation(const Word& w) {
  Word best;
  bool have = false;
  for (const Word& base : {cyclic_reduce(w).core, invert(cyclic_reduce(w).core)}) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      Word rot = base.subword(i, base.size() - i) * base.subword(0, i);
      if (!have || rot < best) {
        best = rot;
        have = true;
      }
    }
  }
  return best;
}

}  // namespace

std::vector<Word> intersecting_cosets(const SubgroupGraph& h, std::size_t L) {
  std::set<Word> reps;
  for_each_reduced_word(h.ambient_rank(), L, [&](const Word& g) {
    auto rep = canonical_coset_rep(h, g);
    if (!rep.empty()) reps.insert(rep);
    return true;
  });
  std::vector<Word> out;
  for (const auto& g : reps) {
    if (!intersect(h, conjugate(h, g)).is_trivial()) out.push_back(g);
  }
  return out;
}

HeightCertificate height(const SubgroupGraph& h, std::size_t L) {
  HeightCertificate cert;
  cert.exactness = Exactness::bounded(L);
  const int r = h.ambient_rank();
  if (h.is_trivial()) {
    cert.witness = Word(r);
    return cert;
  }
  const auto cands = intersecting_cosets(h, L);
  std::vector<SubgroupGraph> conj;
  conj.reserve(cands.size());
  for (const auto& g : cands) conj.push_back(conjugate(h, g));

  std::vector<std::size_t> best;
  SubgroupGraph best_group = h;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, const SubgroupGraph&)> dfs = [&](std::size_t start,
                                                                   const SubgroupGraph& cur) {
    if (chosen.size() > best.size()) {
      best = chosen;
      best_group = cur;
    }
    for (std::size_t i = start; i < cands.size(); ++i) {
      if (chosen.size() + (cands.size() - i) <= best.size()) return;
      auto next = intersect(cur, conj[i]);
      if (next.is_trivial()) continue;
      chosen.push_back(i);
      dfs(i + 1, next);
      chosen.pop_back();
    }
  };
  dfs(0, h);
  cert.k = best.size() + 1;
  cert.conjugators.push_back(Word(r));
  for (auto i : best) cert.conjugators.push_back(cands[i]);
  cert.witness = orient(best_group.generators().front());
  return cert;
}

bool verify_height_certificate(const SubgroupGraph& h, const HeightCertificate& cert) {
  if (cert.k != cert.conjugators.size()) return false;
  if (cert.k == 0) return h.is_trivial();
  if (!cert.conjugators.front().empty() || cert.witness.empty()) return false;
  for (std::size_t i = 0; i < cert.conjugators.size(); ++i) {
    const auto& g = cert.conjugators[i];
    // witness in g H g^-1
    if (!h.contains(invert(g) * cert.witness * g)) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (coset_equal(g, cert.conjugators[j], h)) return false;
    }
  }
  return true;
}

bool h_conjugate(const SubgroupGraph& h, const SubgroupGraph& a, const SubgroupGraph& b) {
  if (a.is_trivial() || b.is_trivial()) return a.is_trivial() && b.is_trivial();
  return are_conjugate(in_h_coordinates(h, a), in_h_coordinates(h, b));
}

std::optional<Word> h_conjugator_into(const SubgroupGraph& h, const Word& x,
                                      const SubgroupGraph& a) {
  if (x.empty()) return Word(h.ambient_rank());
  if (h.is_trivial() || a.is_trivial()) return std::nullopt;
  auto s = conjugator_into(h.rewrite_in_basis(x), in_h_coordinates(h, a));
  if (!s) return std::nullopt;
  return substitute(*s, h.generators(), h.ambient_rank());
}

std::vector<IntersectionClass> infinite_intersection_classes(const SubgroupGraph& h,
                                                             std::size_t L) {
  std::vector<IntersectionClass> classes;
  if (h.is_trivial()) return classes;
  const int r = h.ambient_rank();
  const auto cands = intersecting_cosets(h, L);
  std::vector<SubgroupGraph> conj;
  for (const auto& g : cands) conj.push_back(conjugate(h, g));

  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, const SubgroupGraph&)> dfs = [&](std::size_t start,
                                                                   const SubgroupGraph& cur) {
    bool extendable = false;
    std::vector<char> in_set(cands.size(), 0);
    for (auto i : chosen) in_set[i] = 1;
    for (std::size_t i = 0; i < cands.size() && !extendable; ++i) {
      if (i < start && !in_set[i]) {
        // already explored from a smaller prefix; still counts for maximality
        extendable = !intersect(cur, conj[i]).is_trivial();
      }
    }
    for (std::size_t i = start; i < cands.size(); ++i) {
      auto next = intersect(cur, conj[i]);
      if (next.is_trivial()) continue;
      extendable = true;
      chosen.push_back(i);
      dfs(i + 1, next);
      chosen.pop_back();
    }
    if (extendable) return;
    for (const auto& c : classes) {
      if (h_conjugate(h, c.group, cur)) return;
    }
    IntersectionClass cls{cur, {Word(r)}};
    for (auto i : chosen) cls.conjugators.push_back(cands[i]);
    classes.push_back(std::move(cls));
  };
  dfs(0, h);
  std::stable_sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    return a.conjugators.size() > b.conjugators.size();
  });
  return classes;
}

std::string MalnormalCore::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) out += "; ";
    out += "<" + generators_string(entries[i].group) + ">";
  }
  return out + "}";
}

MalnormalCore malnormal_core(const SubgroupGraph& h, std::size_t L) {
  MalnormalCore core;
  for (const auto& cls : infinite_intersection_classes(h, L)) {
    auto comm = commensurator(cls.group, L, &h);
    bool dup = false;
    for (const auto& e : core.entries) {
      if (h_conjugate(h, e.group, comm.group)) {
        dup = true;
        break;
      }
    }
    if (!dup) core.entries.push_back({comm.group, comm.exactness});
  }
  return core;
}

std::optional<Word> shortest_conjugator_into(const SubgroupGraph& d, const SubgroupGraph& p) {
  const int r = d.ambient_rank();
  if (d.is_trivial()) return Word(r);
  const auto gens = d.generators();
  auto s = conjugator_into(gens.front(), p);
  if (!s) return std::nullopt;
  auto works = [&](const Word& c) {
    return std::all_of(gens.begin(), gens.end(),
                       [&](const Word& x) { return p.contains(invert(c) * x * c); });
  };
  std::optional<Word> found;
  for_each_reduced_word(r, s->size() + 8, [&](const Word& c) {
    if (works(c)) {
      found = c;
      return false;
    }
    return true;
  });
  return found;
}

InducedStructure induced_peripheral_structure(const SubgroupGraph& h, const MalnormalCore& core,
                                              std::size_t L) {
  InducedStructure out;
  out.structure.rank = h.ambient_rank();
  for (const auto& entry : core.entries) {
    auto comm = commensurator(entry.group, L);
    Peripheral candidate;
    if (comm.group.rank() == 1) {
      const Word p = least_rotation(comm.group.generators().front());
      candidate = Peripheral::from_generators(out.structure.rank, {p});
    } else {
      candidate = Peripheral::from_generators(out.structure.rank, comm.group.generators());
    }
    std::size_t j = 0;
    while (j < out.structure.size() &&
           !are_conjugate(out.structure.peripherals[j].group, candidate.group)) {
      ++j;
    }
    if (j == out.structure.size()) {
      out.structure.peripherals.push_back(std::move(candidate));
      out.exactness.push_back(comm.exactness);
    }
    auto c = shortest_conjugator_into(entry.group, out.structure.peripherals[j].group);
    if (!c) {
      throw StructuralError("core entry <" + generators_string(entry.group) +
                            "> does not conjugate into its commensurator");
    }
    out.target.push_back(j);
    out.correction.push_back(*c);
  }
  return out;
}

std::vector<PeripheralCoset> relevant_peripheral_cosets(const SubgroupGraph& h,
                                                        const PeripheralStructure& p,
                                                        std::size_t L) {
  std::vector<PeripheralCoset> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& pi = p.peripherals[i].group;
    std::set<Word> reps;
    for_each_reduced_word(p.rank, L, [&](const Word& t) {
      reps.insert(canonical_coset_rep(pi, t));
      return true;
    });
    for (const auto& t : reps) {
      if (!intersect(h, conjugate(pi, t)).is_trivial()) out.push_back({i, t});
    }
  }
  return out;
}

HFillingResult is_h_filling(const SubgroupGraph& h, const PeripheralStructure& p,
                            const FillingSpec& spec, const MalnormalCore& core, std::size_t L) {
  return is_h_filling(h, p, spec, core, relevant_peripheral_cosets(h, p, L));
}

HFillingResult is_h_filling(const SubgroupGraph& h, const PeripheralStructure& p,
                            const FillingSpec& spec, const MalnormalCore& core,
                            const std::vector<PeripheralCoset>& cosets) {
  spec.validate(p);
  HFillingResult res;
  std::vector<KernelGraph> kernels;
  for (std::size_t i = 0; i < p.size(); ++i) {
    kernels.push_back(kernel_subgroup(p.peripherals[i], spec.kernels[i]));
  }
  for (const auto& [i, t] : cosets) {
    const auto& k = kernels[i].group;
    if (k.is_trivial()) continue;
    std::vector<Word> conj;
    for (const auto& x : k.generators()) conj.push_back(conjugate_by(x, t));
    auto outside = std::find_if(conj.begin(), conj.end(), [&](const Word& y) { return !h.contains(y); });
    if (outside != conj.end()) {
      res.ok = false;
      res.witnesses.push_back({i, t, to_string(*outside) + " is not in H"});
      continue;
    }
    bool placed = false;
    for (const auto& entry : core.entries) {
      auto s = h_conjugator_into(h, conj.front(), entry.group);
      if (!s) continue;
      if (std::all_of(conj.begin(), conj.end(), [&](const Word& y) {
            return entry.group.contains(invert(*s) * y * *s);
          })) {
        placed = true;
        break;
      }
    }
    if (!placed) {
      res.ok = false;
      res.witnesses.push_back({i, t, "kernel conjugate is not in an H-conjugate of a core entry"});
    }
  }
  return res;
}

std::vector<KernelGraph> induced_filling_kernels(const MalnormalCore& core,
                                                 const InducedStructure& induced,
                                                 const FillingSpec& spec) {
  std::vector<KernelGraph> out;
  for (std::size_t i = 0; i < core.entries.size(); ++i) {
    const auto j = induced.target.at(i);
    auto n = kernel_subgroup(induced.structure.peripherals.at(j), spec.kernels.at(j));
    out.push_back({intersect(conjugate(n.group, induced.correction[i]), core.entries[i].group),
                   n.exactness});
  }
  return out;
}

}  // namespace cuspfill
