#include "microevo/neat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace microevo {

void EvolutionConfig::validate() const {
    auto proportion = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (population_size <= 0) throw std::invalid_argument("config: population_size must be > 0");
    if (generations < 0) throw std::invalid_argument("config: generations must be >= 0");
    if (target_species <= 0) throw std::invalid_argument("config: target_species must be > 0");
    if (!proportion(initial_connection_probability) || !proportion(elitism_proportion) ||
        !proportion(selection_proportion) || !proportion(asexual_proportion) ||
        !proportion(sexual_proportion) || !proportion(interspecies_mating_rate) ||
        !proportion(weight_mutation_probability) || !proportion(add_node_probability) ||
        !proportion(add_connection_probability) || !proportion(delete_connection_probability))
        throw std::invalid_argument("config: proportions must be in [0,1]");
    if (std::abs(asexual_proportion + sexual_proportion - 1.0) > 1e-9)
        throw std::invalid_argument("config: asexual + sexual proportions must equal 1");
    if (weight_range <= 0.0) throw std::invalid_argument("config: weight_range must be > 0");
}

Innovation InnovationRegistry::connection_innovation(NodeId source, NodeId target) {
    auto [it, inserted] = connection_table_.try_emplace({source, target}, next_innovation_);
    if (inserted) ++next_innovation_;
    return it->second;
}

InnovationRegistry::NodeSplit InnovationRegistry::split_innovation(Innovation split) {
    auto it = split_table_.find(split);
    if (it != split_table_.end()) return it->second;
    NodeSplit s{next_node_++, next_innovation_, next_innovation_ + 1};
    next_innovation_ += 2;
    split_table_.emplace(split, s);
    return s;
}

void InnovationRegistry::begin_generation() {
    connection_table_.clear();
    split_table_.clear();
}

namespace {

void sort_connections(Genome& g) {
    std::ranges::sort(g.connections, {}, &ConnectionGene::innovation);
}

double clamp_weight(double w, const EvolutionConfig& cfg) {
    return std::clamp(w, -cfg.weight_range, cfg.weight_range);
}

}  // namespace

Population seed_population(const EvolutionConfig& config, InnovationRegistry& registry,
                           Rng& rng) {
    config.validate();
    Population pop;
    pop.reserve(config.population_size);
    for (int g = 0; g < config.population_size; ++g) {
        Genome genome = make_io_skeleton();
        for (NodeId i = 0; i < kNumInputs; ++i) {
            for (int o = 0; o < kNumOutputs; ++o) {
                if (!rng.bernoulli(config.initial_connection_probability)) continue;
                const NodeId out = output_node(o);
                genome.connections.push_back(
                    {registry.connection_innovation(i, out), i, out,
                     rng.uniform(-config.weight_range, config.weight_range), true});
            }
        }
        sort_connections(genome);
        pop.push_back(std::move(genome));
    }
    return pop;
}

void mutate(Genome& genome, InnovationRegistry& registry, const EvolutionConfig& config,
            Rng& rng) {
    if (rng.bernoulli(config.weight_mutation_probability)) {
        for (auto& c : genome.connections) {
            if (rng.bernoulli(config.weight_perturb_probability))
                c.weight = clamp_weight(
                    c.weight + rng.uniform(-config.weight_perturb_power,
                                           config.weight_perturb_power),
                    config);
            else
                c.weight = rng.uniform(-config.weight_range, config.weight_range);
        }
    }

    if (rng.bernoulli(config.add_node_probability)) {
        std::vector<int> enabled;
        for (int i = 0; i < static_cast<int>(genome.connections.size()); ++i)
            if (genome.connections[i].enabled) enabled.push_back(i);
        if (!enabled.empty()) {
            const int pick = static_cast<int>(rng.uniform_index(enabled.size()));
            ConnectionGene& old = genome.connections[enabled[pick]];
            const auto split = registry.split_innovation(old.innovation);
            // Re-splitting an edge whose node this genome already carries
            // (possible after crossover re-enabled it) is a no-op.
            if (!genome.has_node(split.node) &&
                genome.find_connection(split.in_innovation) == nullptr &&
                genome.find_connection(split.out_innovation) == nullptr) {
                old.enabled = false;
                const NodeId src = old.source, tgt = old.target;
                const double w = old.weight;
                genome.nodes.push_back({split.node, NodeKind::hidden});
                genome.connections.push_back(
                    {split.in_innovation, src, split.node, 1.0, true});
                genome.connections.push_back(
                    {split.out_innovation, split.node, tgt, w, true});
                sort_connections(genome);
            }
        }
    }

    if (rng.bernoulli(config.add_connection_probability)) {
        // Candidate edges: any node -> any non-input node, not already present
        // (enabled or not). Self-loops allowed; the network evaluates them as
        // one-tick recurrent edges.
        std::vector<std::pair<NodeId, NodeId>> candidates;
        for (const auto& s : genome.nodes) {
            for (const auto& t : genome.nodes) {
                if (t.kind == NodeKind::input) continue;
                if (genome.has_connection(s.id, t.id)) continue;
                candidates.emplace_back(s.id, t.id);
            }
        }
        if (!candidates.empty()) {
            std::ranges::sort(candidates);
            const auto [src, tgt] =
                candidates[rng.uniform_index(candidates.size())];
            genome.connections.push_back(
                {registry.connection_innovation(src, tgt), src, tgt,
                 rng.uniform(-config.weight_range, config.weight_range), true});
            sort_connections(genome);
        }
    }

    if (rng.bernoulli(config.delete_connection_probability) &&
        !genome.connections.empty()) {
        const auto pick = rng.uniform_index(genome.connections.size());
        genome.connections.erase(genome.connections.begin() +
                                 static_cast<std::ptrdiff_t>(pick));
    }
}

Genome crossover(const Genome& parent_a, const Genome& parent_b,
                 double reenable_probability, Rng& rng) {
    const bool a_fitter = parent_a.fitness > parent_b.fitness;
    const bool b_fitter = parent_b.fitness > parent_a.fitness;

    Genome child = make_io_skeleton();

    auto push_gene = [&](const ConnectionGene& gene, bool disabled_in_either) {
        if (child.has_connection(gene.source, gene.target)) return;
        ConnectionGene g = gene;
        g.enabled =
            disabled_in_either ? rng.bernoulli(reenable_probability) : gene.enabled;
        child.connections.push_back(g);
    };

    std::size_t ia = 0, ib = 0;
    while (ia < parent_a.connections.size() || ib < parent_b.connections.size()) {
        const bool a_left = ia < parent_a.connections.size();
        const bool b_left = ib < parent_b.connections.size();
        if (a_left && b_left &&
            parent_a.connections[ia].innovation == parent_b.connections[ib].innovation) {
            const ConnectionGene& ga = parent_a.connections[ia];
            const ConnectionGene& gb = parent_b.connections[ib];
            push_gene(rng.bernoulli(0.5) ? ga : gb, !ga.enabled || !gb.enabled);
            ++ia, ++ib;
        } else if (b_left && (!a_left || parent_a.connections[ia].innovation >
                                             parent_b.connections[ib].innovation)) {
            const ConnectionGene& gb = parent_b.connections[ib];
            if (b_fitter || (!a_fitter && !b_fitter)) push_gene(gb, !gb.enabled);
            ++ib;
        } else {
            const ConnectionGene& ga = parent_a.connections[ia];
            if (a_fitter || (!a_fitter && !b_fitter)) push_gene(ga, !ga.enabled);
            ++ia;
        }
    }
    sort_connections(child);

    // Hidden nodes referenced by inherited connections, kinds looked up in
    // whichever parent carries them.
    for (const auto& c : child.connections) {
        for (NodeId id : {c.source, c.target}) {
            if (child.has_node(id)) continue;
            child.nodes.push_back({id, NodeKind::hidden});
        }
    }
    return child;
}

double compatibility_distance(const Genome& a, const Genome& b,
                              const EvolutionConfig& config) {
    const std::size_t na = a.connections.size(), nb = b.connections.size();
    if (na == 0 && nb == 0) return 0.0;

    int matching = 0, disjoint = 0, excess = 0;
    double weight_diff = 0.0;
    std::size_t ia = 0, ib = 0;
    const Innovation max_a = na ? a.connections.back().innovation : 0;
    const Innovation max_b = nb ? b.connections.back().innovation : 0;

    while (ia < na || ib < nb) {
        if (ia < na && ib < nb &&
            a.connections[ia].innovation == b.connections[ib].innovation) {
            weight_diff += std::abs(a.connections[ia].weight - b.connections[ib].weight);
            ++matching, ++ia, ++ib;
        } else if (ib < nb &&
                   (ia >= na || a.connections[ia].innovation > b.connections[ib].innovation)) {
            (na == 0 || b.connections[ib].innovation > max_a) ? ++excess : ++disjoint;
            ++ib;
        } else {
            (nb == 0 || a.connections[ia].innovation > max_b) ? ++excess : ++disjoint;
            ++ia;
        }
    }

    const double n = (na < 20 && nb < 20) ? 1.0 : static_cast<double>(std::max(na, nb));
    const double mean_weight_diff = matching > 0 ? weight_diff / matching : 0.0;
    return config.compat_excess_coeff * excess / n +
           config.compat_disjoint_coeff * disjoint / n +
           config.compat_weight_coeff * mean_weight_diff;
}

void speciate(const Population& population, SpeciationState& state,
              const EvolutionConfig& config) {
    for (auto& s : state.species) s.members.clear();

    for (int i = 0; i < static_cast<int>(population.size()); ++i) {
        bool placed = false;
        for (auto& s : state.species) {
            if (compatibility_distance(population[i], s.representative, config) <=
                state.compat_threshold) {
                s.members.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            Species fresh;
            fresh.representative = population[i];
            fresh.members.push_back(i);
            state.species.push_back(std::move(fresh));
        }
    }

    std::erase_if(state.species, [](const Species& s) { return s.members.empty(); });

    // First member becomes next generation's reference point.
    for (auto& s : state.species) s.representative = population[s.members.front()];

    const int count = static_cast<int>(state.species.size());
    if (count > config.target_species)
        state.compat_threshold *= 1.1;
    else if (count < config.target_species)
        state.compat_threshold = std::max(0.1, state.compat_threshold * 0.9);
}

namespace {

/// Largest-remainder apportionment of `total` offspring over `shares`.
std::vector<int> apportion(const std::vector<double>& shares, int total) {
    const double sum = std::accumulate(shares.begin(), shares.end(), 0.0);
    std::vector<int> quota(shares.size(), 0);
    if (shares.empty()) return quota;

    std::vector<double> exact(shares.size());
    if (sum <= 0.0) {
        std::ranges::fill(exact, static_cast<double>(total) / shares.size());
    } else {
        for (std::size_t i = 0; i < shares.size(); ++i)
            exact[i] = total * shares[i] / sum;
    }
    int assigned = 0;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        quota[i] = static_cast<int>(std::floor(exact[i]));
        assigned += quota[i];
    }
    std::vector<std::size_t> order(shares.size());
    std::iota(order.begin(), order.end(), 0);
    std::ranges::stable_sort(order, [&](std::size_t x, std::size_t y) {
        return exact[x] - std::floor(exact[x]) > exact[y] - std::floor(exact[y]);
    });
    for (std::size_t k = 0; assigned < total; ++k) {
        quota[order[k % order.size()]] += 1;
        ++assigned;
    }
    return quota;
}

}  // namespace

Population next_generation(const Population& population, SpeciationState& state,
                           InnovationRegistry& registry, const EvolutionConfig& config,
                           Rng& rng, ReproductionCounters* counters) {
    registry.begin_generation();

    // Stagnation bookkeeping.
    int champion_species = 0;
    double champion_fitness = -1.0;
    for (int si = 0; si < static_cast<int>(state.species.size()); ++si) {
        Species& s = state.species[si];
        double best = 0.0;
        for (int m : s.members) best = std::max(best, population[m].fitness);
        if (best > s.best_fitness) {
            s.best_fitness = best;
            s.generations_since_improvement = 0;
        } else {
            s.generations_since_improvement += 1;
        }
        if (best > champion_fitness) {
            champion_fitness = best;
            champion_species = si;
        }
    }

    // Fitness-sharing quota: offspring proportional to species mean fitness.
    // Stagnant species lose reproduction rights unless they hold the champion.
    std::vector<double> shares(state.species.size(), 0.0);
    for (int si = 0; si < static_cast<int>(state.species.size()); ++si) {
        const Species& s = state.species[si];
        const bool eligible = s.generations_since_improvement <= config.stagnation_limit ||
                              si == champion_species;
        if (!eligible) continue;
        double sum = 0.0;
        for (int m : s.members) sum += population[m].fitness;
        const double mean = sum / s.members.size();
        shares[si] = mean > 0.0 ? mean : 1e-12;  // eligible but zero-fit still breeds
    }
    std::vector<int> quota = apportion(shares, config.population_size);

    Population next;
    next.reserve(config.population_size);

    for (int si = 0; si < static_cast<int>(state.species.size()); ++si) {
        if (quota[si] == 0) continue;
        const Species& s = state.species[si];

        std::vector<int> ranked = s.members;
        std::ranges::stable_sort(ranked, [&](int x, int y) {
            return population[x].fitness > population[y].fitness;
        });

        int elites = static_cast<int>(
            std::round(config.elitism_proportion * static_cast<double>(ranked.size())));
        if (si == champion_species) elites = std::max(elites, 1);
        elites = std::min({elites, quota[si], static_cast<int>(ranked.size())});

        for (int e = 0; e < elites; ++e) next.push_back(population[ranked[e]]);

        const std::size_t pool_size = std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::ceil(config.selection_proportion * ranked.size())));
        auto pick_parent = [&]() -> const Genome& {
            return population[ranked[rng.uniform_index(pool_size)]];
        };

        for (int k = elites; k < quota[si]; ++k) {
            Genome child;
            if (rng.bernoulli(config.asexual_proportion)) {
                child = pick_parent();
                child.fitness = 0.0;
                if (counters) counters->asexual += 1;
            } else {
                const Genome& pa = pick_parent();
                const Genome* pb = nullptr;
                if (state.species.size() > 1 &&
                    rng.bernoulli(config.interspecies_mating_rate)) {
                    // Mate outside the species: uniform over other species.
                    int other = static_cast<int>(rng.uniform_index(state.species.size() - 1));
                    if (other >= si) ++other;
                    const Species& os = state.species[other];
                    std::vector<int> oranked = os.members;
                    std::ranges::stable_sort(oranked, [&](int x, int y) {
                        return population[x].fitness > population[y].fitness;
                    });
                    const auto opool = std::max<std::size_t>(
                        1, static_cast<std::size_t>(
                               std::ceil(config.selection_proportion * oranked.size())));
                    pb = &population[oranked[rng.uniform_index(opool)]];
                    if (counters) counters->interspecies += 1;
                } else {
                    pb = &pick_parent();
                }
                child = crossover(pa, *pb, config.gene_reenable_probability, rng);
                if (counters) counters->crossovers += 1;
            }
            mutate(child, registry, config, rng);
            next.push_back(std::move(child));
        }
    }

    return next;
}

}  // namespace microevo
