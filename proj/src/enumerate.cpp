#include <algorithm>
#include <numeric>

#include "inqnl/model.hpp"

namespace inqnl {

namespace {

std::uint64_t next_same_popcount(std::uint64_t v) {
    std::uint64_t c = v & (~v + 1);
    std::uint64_t r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

struct Renamer {
    int k;
    int m;
    const std::vector<StateMask>& candidates;
    std::vector<int> cand_index;  // state mask -> candidate position

    Renamer(int worlds, const std::vector<StateMask>& cands)
        : k(worlds), m(static_cast<int>(cands.size())), candidates(cands) {
        cand_index.assign(1u << k, -1);
        for (int j = 0; j < m; ++j) cand_index[candidates[j]] = j;
    }

    StateMask remap_state(StateMask s, const std::vector<int>& perm) const {
        StateMask out = 0;
        for (int w = 0; w < k; ++w)
            if ((s >> w) & 1u) out |= (1u << perm[w]);
        return out;
    }

    std::uint64_t remap_families(std::uint64_t fam, const std::vector<int>& perm) const {
        std::uint64_t out = 0;
        for (int w = 0; w < k; ++w)
            for (int j = 0; j < m; ++j)
                if ((fam >> (w * m + j)) & 1u)
                    out |= (1ull << (perm[w] * m + cand_index[remap_state(candidates[j], perm)]));
        return out;
    }

    std::uint64_t remap_valuation(std::uint64_t val, int atom_count,
                                  const std::vector<int>& perm) const {
        std::uint64_t out = 0;
        for (int a = 0; a < atom_count; ++a)
            for (int w = 0; w < k; ++w)
                if ((val >> (a * k + w)) & 1u) out |= (1ull << (a * k + perm[w]));
        return out;
    }
};

}  // namespace

void enumerate_models(int max_worlds, const AtomSignature& atoms, bool allow_empty,
                      const std::function<bool(const NeighborhoodModel&)>& visit,
                      const EnumerationLimits& limits) {
    if (max_worlds < 1) throw ArgError("enumeration needs at least one world");
    if (max_worlds > limits.max_worlds_cap)
        throw CapError("model enumeration is capped at " +
                       std::to_string(limits.max_worlds_cap) +
                       " worlds (neighborhood families grow doubly exponentially)");
    int atom_count = static_cast<int>(atoms.size());

    for (int k = 1; k <= max_worlds; ++k) {
        std::vector<std::string> names;
        for (int w = 0; w < k; ++w) names.push_back("w" + std::to_string(w + 1));

        std::vector<StateMask> candidates;
        if (allow_empty) candidates.push_back(0);
        for (StateMask s = 1; s < (1u << k); ++s) candidates.push_back(s);
        std::sort(candidates.begin(), candidates.end(), state_less);
        int m = static_cast<int>(candidates.size());
        int fam_bits = k * m;
        if (fam_bits > 62 || k * atom_count > 62)
            throw CapError("enumeration space does not fit in 64 bits");
        std::uint64_t fam_limit = 1ull << fam_bits;
        std::uint64_t val_limit = 1ull << (k * atom_count);

        Renamer ren(k, candidates);
        std::vector<std::vector<int>> perms;
        {
            std::vector<int> p(k);
            std::iota(p.begin(), p.end(), 0);
            while (std::next_permutation(p.begin(), p.end())) perms.push_back(p);
        }

        NeighborhoodModel model(names, atoms, allow_empty);

        // Ascending total neighborhood count, so sparse models come first and
        // first-hit searches stay cheap.
        std::vector<const std::vector<int>*> stabilizer;
        for (int c = 0; c <= fam_bits; ++c) {
            std::uint64_t fam = c == 0 ? 0 : (1ull << c) - 1;
            while (true) {
                bool canonical = true;
                stabilizer.clear();
                for (const auto& p : perms) {
                    std::uint64_t f2 = ren.remap_families(fam, p);
                    if (f2 < fam) {
                        canonical = false;
                        break;
                    }
                    if (f2 == fam) stabilizer.push_back(&p);
                }
                if (canonical) {
                    for (std::uint64_t val = 0; val < val_limit; ++val) {
                        bool least = true;
                        for (const auto* p : stabilizer) {
                            if (ren.remap_valuation(val, atom_count, *p) < val) {
                                least = false;
                                break;
                            }
                        }
                        if (!least) continue;
                        for (int w = 0; w < k; ++w) {
                            model.sigma[w].clear();
                            for (int j = 0; j < m; ++j)
                                if ((fam >> (w * m + j)) & 1u)
                                    model.sigma[w].push_back(candidates[j]);
                        }
                        for (int a = 0; a < atom_count; ++a) {
                            StateMask mask = 0;
                            for (int w = 0; w < k; ++w)
                                if ((val >> (a * k + w)) & 1u) mask |= (1u << w);
                            model.valuation[a] = mask;
                        }
                        if (!visit(model)) return;
                    }
                }
                if (c == 0) break;
                std::uint64_t next = next_same_popcount(fam);
                if (next >= fam_limit) break;
                fam = next;
            }
        }
    }
}

std::vector<NeighborhoodModel> enumerate_models_collect(int max_worlds,
                                                        const AtomSignature& atoms,
                                                        bool allow_empty,
                                                        const EnumerationLimits& limits) {
    std::vector<NeighborhoodModel> out;
    enumerate_models(max_worlds, atoms, allow_empty,
                     [&](const NeighborhoodModel& m) {
                         out.push_back(m);
                         return true;
                     },
                     limits);
    return out;
}

NeighborhoodModel random_model(std::mt19937& rng, int max_worlds, const AtomSignature& atoms,
                               bool allow_empty, double neighborhood_prob) {
    std::uniform_int_distribution<int> world_count(1, max_worlds);
    int k = world_count(rng);
    std::vector<std::string> names;
    for (int w = 0; w < k; ++w) names.push_back("w" + std::to_string(w + 1));
    NeighborhoodModel m(names, atoms, allow_empty);
    std::bernoulli_distribution keep(neighborhood_prob);
    std::bernoulli_distribution coin(0.5);
    for (int w = 0; w < k; ++w) {
        for (StateMask s = allow_empty ? 0u : 1u; s < (1u << k); ++s)
            if (keep(rng)) m.add_neighborhood(w, s);
    }
    for (std::size_t a = 0; a < atoms.size(); ++a)
        for (int w = 0; w < k; ++w) m.set_atom(w, static_cast<int>(a), coin(rng));
    return m;
}

}  // namespace inqnl
