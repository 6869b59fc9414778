#include <algorithm>
#include <numeric>

#include "memsuite/core/error.hpp"
#include "memsuite/core/params.hpp"
#include "memsuite/diagnostic/tasks.hpp"

namespace memsuite::diagnostic {

namespace {

int action_index(std::span<const double> a) { return static_cast<int>(a[0]); }

void one_hot(std::vector<float>& out, std::size_t offset, int index) {
    if (index >= 0) out[offset + static_cast<std::size_t>(index)] = 1.0f;
}

}  // namespace

// --- MemoryLength -------------------------------------------------------------

memory_length::params_t memory_length::parse(const task_params& params) {
    param_reader r(params, "MemoryLength");
    params_t p;
    p.memory_length = r.integer("memory_length", p.memory_length, 1, 100000);
    p.num_bits = r.integer("num_bits", p.num_bits, 1, 1024);
    r.finish();
    return p;
}

space_spec memory_length::obs_space() const {
    // [step index, query, first-step flag, context bits]
    std::vector<double> lo(3 + p_.num_bits, -1.0), hi(3 + p_.num_bits, 1.0);
    lo[0] = 0;
    hi[0] = p_.memory_length + 1;
    lo[1] = 0;
    hi[1] = p_.num_bits - 1;
    lo[2] = 0;
    return space_spec::box(lo, hi, {3 + p_.num_bits});
}

void memory_length::reset(std::uint64_t seed) {
    rng gen(seed);
    s_.context.resize(p_.num_bits);
    for (int& c : s_.context) c = gen.bernoulli(0.5) ? 1 : -1;
    s_.query = gen.below_int(p_.num_bits);
    s_.t = 0;
}

transition memory_length::step(std::span<const double> action) {
    ++s_.t;
    transition tr;
    if (s_.t == p_.memory_length + 1) {
        const int guess = action_index(action) == 1 ? 1 : -1;
        tr.success = guess == s_.context[s_.query];
        tr.reward = tr.success ? 1.0 : -1.0;
        tr.terminated = true;
    }
    return tr;
}

void memory_length::observe(observation_mode, std::vector<float>& out) const {
    out.assign(3 + p_.num_bits, 0.0f);
    out[0] = static_cast<float>(s_.t);
    if (s_.t == 0) {
        out[2] = 1.0f;
        for (int i = 0; i < p_.num_bits; ++i) out[3 + i] = static_cast<float>(s_.context[i]);
    }
    if (s_.t == p_.memory_length) out[1] = static_cast<float>(s_.query);
}

phase_id memory_length::phase() const {
    if (s_.t == 0) return phase_id::observation;
    if (s_.t >= p_.memory_length) return phase_id::selection;
    return phase_id::delay;
}

std::vector<float> memory_length::oracle_info() const {
    std::vector<float> out(s_.context.begin(), s_.context.end());
    out.push_back(static_cast<float>(s_.query));
    return out;
}

// --- MemoryCards --------------------------------------------------------------

memory_cards::params_t memory_cards::parse(const task_params& params) {
    param_reader r(params, "MemoryCards");
    params_t p;
    p.num_pairs = r.integer("num_pairs", p.num_pairs, 1, 64);
    p.max_steps = r.integer("max_steps", p.max_steps, 1, 100000);
    r.finish();
    return p;
}

space_spec memory_cards::obs_space() const {
    // [value one-hot, revealed position one-hot, removal mask]
    return space_spec::uniform_box(0, 1, {5 * p_.num_pairs});
}

void memory_cards::reveal_random() {
    std::vector<int> candidates;
    for (int i = 0; i < 2 * p_.num_pairs; ++i)
        if (!s_.removed[i]) candidates.push_back(i);
    s_.revealed = candidates.empty() ? -1 : candidates[s_.gen.below(candidates.size())];
}

void memory_cards::reset(std::uint64_t seed) {
    s_.gen = rng(seed);
    const int n = 2 * p_.num_pairs;
    s_.deck.resize(n);
    for (int i = 0; i < n; ++i) s_.deck[i] = i / 2;
    s_.gen.shuffle(s_.deck);
    s_.removed.assign(n, 0);
    reveal_random();
}

transition memory_cards::step(std::span<const double> action) {
    const int a = action_index(action);
    transition tr;
    const int r = s_.revealed;
    if (a != r && !s_.removed[a] && s_.deck[a] == s_.deck[r]) {
        s_.removed[a] = s_.removed[r] = 1;
        if (std::all_of(s_.removed.begin(), s_.removed.end(), [](auto v) { return v != 0; })) {
            tr.success = tr.terminated = true;
            s_.revealed = -1;
            return tr;
        }
    } else {
        tr.reward = -1.0;
    }
    reveal_random();
    return tr;
}

void memory_cards::observe(observation_mode, std::vector<float>& out) const {
    const int n = 2 * p_.num_pairs;
    out.assign(5 * p_.num_pairs, 0.0f);
    if (s_.revealed >= 0) {
        one_hot(out, 0, s_.deck[s_.revealed]);
        one_hot(out, p_.num_pairs, s_.revealed);
    }
    for (int i = 0; i < n; ++i) out[3 * p_.num_pairs + i] = s_.removed[i] ? 1.0f : 0.0f;
}

std::vector<float> memory_cards::oracle_info() const { return {s_.deck.begin(), s_.deck.end()}; }

// --- RepeatPrevious -----------------------------------------------------------

repeat_previous::params_t repeat_previous::parse(const task_params& params) {
    param_reader r(params, "RepeatPrevious");
    params_t p;
    p.k = r.integer("k", p.k, 1, 100000);
    p.length = r.integer("length", p.length, 2, 100000);
    r.finish();
    if (p.k >= p.length) throw error(errc::bad_param, "RepeatPrevious: k must be below length");
    return p;
}

space_spec repeat_previous::obs_space() const { return space_spec::uniform_box(0, 1, {4}); }

void repeat_previous::reset(std::uint64_t seed) {
    s_.gen = rng(seed);
    s_.symbols.assign(1, s_.gen.below_int(4));
    s_.t = 0;
}

transition repeat_previous::step(std::span<const double> action) {
    transition tr;
    const int i = s_.t;
    if (i >= p_.k) {
        const double unit = 1.0 / (p_.length - p_.k);
        tr.success = action_index(action) == s_.symbols[i - p_.k];
        tr.reward = tr.success ? unit : -unit;
    }
    ++s_.t;
    s_.symbols.push_back(s_.gen.below_int(4));
    return tr;
}

void repeat_previous::observe(observation_mode, std::vector<float>& out) const {
    out.assign(4, 0.0f);
    one_hot(out, 0, s_.symbols[s_.t]);
}

phase_id repeat_previous::phase() const { return s_.t < p_.k ? phase_id::observation : phase_id::action; }

std::vector<float> repeat_previous::oracle_info() const {
    return {static_cast<float>(s_.t >= p_.k ? s_.symbols[s_.t - p_.k] : -1)};
}

// --- RepeatFirst --------------------------------------------------------------

repeat_first::params_t repeat_first::parse(const task_params& params) {
    param_reader r(params, "RepeatFirst");
    params_t p;
    p.length = r.integer("length", p.length, 1, 100000);
    r.finish();
    return p;
}

space_spec repeat_first::obs_space() const { return space_spec::uniform_box(0, 1, {5}); }

void repeat_first::reset(std::uint64_t seed) {
    s_.gen = rng(seed);
    s_.first = s_.current = s_.gen.below_int(4);
    s_.t = 0;
}

transition repeat_first::step(std::span<const double> action) {
    transition tr;
    tr.success = action_index(action) == s_.first;
    tr.reward = tr.success ? 1.0 / p_.length : 0.0;
    ++s_.t;
    s_.current = s_.gen.below_int(4);
    return tr;
}

void repeat_first::observe(observation_mode, std::vector<float>& out) const {
    out.assign(5, 0.0f);
    one_hot(out, 0, s_.current);
    if (s_.t == 0) out[4] = 1.0f;
}

std::vector<float> repeat_first::oracle_info() const { return {static_cast<float>(s_.first)}; }

// --- CountRecall --------------------------------------------------------------

count_recall::params_t count_recall::parse(const task_params& params) {
    param_reader r(params, "CountRecall");
    params_t p;
    p.values = r.integer("values", p.values, 2, 1024);
    p.length = r.integer("length", p.length, 1, 100000);
    r.finish();
    return p;
}

space_spec count_recall::obs_space() const { return space_spec::uniform_box(0, 1, {2 * p_.values}); }

void count_recall::reset(std::uint64_t seed) {
    s_.gen = rng(seed);
    s_.counts.assign(p_.values, 0);
    s_.next_value = s_.gen.below_int(p_.values);
    s_.query = s_.gen.below_int(p_.values);
    s_.t = 0;
}

transition count_recall::step(std::span<const double> action) {
    transition tr;
    tr.success = action_index(action) == s_.counts[s_.query];
    tr.reward = tr.success ? 1.0 / p_.length : 0.0;
    ++s_.counts[s_.next_value];
    ++s_.t;
    s_.next_value = s_.gen.below_int(p_.values);
    s_.query = s_.gen.below_int(p_.values);
    return tr;
}

void count_recall::observe(observation_mode, std::vector<float>& out) const {
    out.assign(2 * p_.values, 0.0f);
    one_hot(out, 0, s_.next_value);
    one_hot(out, p_.values, s_.query);
}

std::vector<float> count_recall::oracle_info() const { return {static_cast<float>(s_.counts[s_.query])}; }

// --- HigherLower --------------------------------------------------------------

space_spec higher_lower::obs_space() const { return space_spec::uniform_box(0, 1, {13}); }

void higher_lower::reset(std::uint64_t seed) {
    rng gen(seed);
    std::iota(s_.deck.begin(), s_.deck.end(), 0);
    gen.shuffle(s_.deck);
    s_.index = 0;
}

transition higher_lower::step(std::span<const double> action) {
    transition tr;
    const int ref = rank_of(s_.deck[s_.index]);
    const int next = rank_of(s_.deck[s_.index + 1]);
    ++s_.index;
    if (next != ref) {
        const bool higher = next > ref;
        tr.success = (action_index(action) == 0) == higher;
        tr.reward = (tr.success ? 1.0 : -1.0) / 51.0;
    }
    tr.terminated = s_.index == 51;
    return tr;
}

void higher_lower::observe(observation_mode, std::vector<float>& out) const {
    out.assign(13, 0.0f);
    one_hot(out, 0, rank_of(s_.deck[s_.index]));
}

std::vector<float> higher_lower::oracle_info() const {
    return {static_cast<float>(s_.index < 51 ? rank_of(s_.deck[s_.index + 1]) : -1)};
}

// --- Autoencode ---------------------------------------------------------------

autoencode::params_t autoencode::parse(const task_params& params) {
    param_reader r(params, "Autoencode");
    params_t p;
    p.length = r.integer("length", p.length, 1, 10000);
    p.values = r.integer("values", p.values, 2, 1024);
    r.finish();
    return p;
}

space_spec autoencode::obs_space() const { return space_spec::uniform_box(0, 1, {p_.values + 1}); }

void autoencode::reset(std::uint64_t seed) {
    rng gen(seed);
    s_.deck.resize(p_.length);
    for (int i = 0; i < p_.length; ++i) s_.deck[i] = i % p_.values;
    gen.shuffle(s_.deck);
    s_.t = 0;
}

// Steps 0..N-2 show cards; the last card is shown with the watch flag cleared
// and the reproduce phase scores steps N-1..2N-2 against deck[t - (N-1)].
transition autoencode::step(std::span<const double> action) {
    transition tr;
    const int n = p_.length;
    const int j = s_.t - (n - 1);
    if (j >= 0) {
        tr.success = action_index(action) == s_.deck[j];
        if (tr.success) tr.reward = 1.0 / n;
    }
    ++s_.t;
    tr.terminated = s_.t >= 2 * n - 1;
    return tr;
}

void autoencode::observe(observation_mode, std::vector<float>& out) const {
    out.assign(p_.values + 1, 0.0f);
    if (s_.t < p_.length) one_hot(out, 0, s_.deck[s_.t]);
    if (s_.t < p_.length - 1) out[p_.values] = 1.0f;
}

phase_id autoencode::phase() const { return s_.t < p_.length - 1 ? phase_id::observation : phase_id::action; }

std::vector<float> autoencode::oracle_info() const {
    const int j = s_.t - (p_.length - 1);
    return {static_cast<float>(j >= 0 && j < p_.length ? s_.deck[j] : -1)};
}

// --- Concentration ------------------------------------------------------------

concentration::params_t concentration::parse(const task_params& params) {
    param_reader r(params, "Concentration");
    params_t p;
    p.ranks = r.integer("ranks", p.ranks, 1, 1000);
    p.suits = r.integer("suits", p.suits, 2, 1000);
    p.flips = r.integer("flips", p.flips, 1, 1000000);
    r.finish();
    if (p.suits % 2 != 0) throw error(errc::bad_param, "Concentration: suits must be even");
    return p;
}

space_spec concentration::obs_space() const { return space_spec::uniform_box(-1, p_.ranks, {cards()}); }

void concentration::reset(std::uint64_t seed) {
    rng gen(seed);
    s_.ranks.resize(cards());
    for (int i = 0; i < cards(); ++i) s_.ranks[i] = i % p_.ranks;
    gen.shuffle(s_.ranks);
    s_.status.assign(cards(), face_down);
    s_.up.clear();
    s_.matched = 0;
}

transition concentration::step(std::span<const double> action) {
    transition tr;
    if (s_.up.size() == 2) {
        for (int c : s_.up) s_.status[c] = face_down;
        s_.up.clear();
    }
    const int a = action_index(action);
    if (s_.status[a] == face_down) {
        s_.status[a] = face_up;
        s_.up.push_back(a);
        if (s_.up.size() == 2 && s_.ranks[s_.up[0]] == s_.ranks[s_.up[1]]) {
            for (int c : s_.up) s_.status[c] = removed;
            s_.up.clear();
            ++s_.matched;
            tr.reward = 1.0;
        }
    }
    tr.success = 2 * s_.matched == cards();
    return tr;
}

void concentration::observe(observation_mode, std::vector<float>& out) const {
    out.resize(cards());
    for (int i = 0; i < cards(); ++i) {
        switch (s_.status[i]) {
            case face_down: out[i] = 0.0f; break;
            case face_up: out[i] = static_cast<float>(s_.ranks[i] + 1); break;
            default: out[i] = -1.0f; break;
        }
    }
}

std::vector<float> concentration::oracle_info() const { return {s_.ranks.begin(), s_.ranks.end()}; }

// --- MultiarmedBandit ---------------------------------------------------------

bandit::params_t bandit::parse(const task_params& params) {
    param_reader r(params, "MultiarmedBandit");
    params_t p;
    p.arms = r.integer("arms", p.arms, 2, 1024);
    p.length = r.integer("length", p.length, 1, 100000);
    r.finish();
    return p;
}

space_spec bandit::obs_space() const { return space_spec::uniform_box(0, 1, {p_.arms + 1}); }

void bandit::reset(std::uint64_t seed) {
    s_.gen = rng(seed);
    s_.means.resize(p_.arms);
    for (double& m : s_.means) m = s_.gen.uniform();
    s_.last_arm = -1;
    s_.last_reward = 0.0;
}

transition bandit::step(std::span<const double> action) {
    const int a = action_index(action);
    transition tr;
    tr.reward = s_.gen.bernoulli(s_.means[a]) ? 1.0 : 0.0;
    tr.success = tr.reward > 0;
    s_.last_arm = a;
    s_.last_reward = tr.reward;
    return tr;
}

void bandit::observe(observation_mode, std::vector<float>& out) const {
    out.assign(p_.arms + 1, 0.0f);
    one_hot(out, 0, s_.last_arm);
    out[p_.arms] = static_cast<float>(s_.last_reward);
}

std::vector<float> bandit::oracle_info() const { return {s_.means.begin(), s_.means.end()}; }

}  // namespace memsuite::diagnostic
