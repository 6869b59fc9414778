#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <numeric>

#include <memsuite/core/rng.hpp>
#include <memsuite/diagnostic/scripted.hpp>
#include <memsuite/diagnostic/tasks.hpp>

#include "helpers.hpp"

using namespace memsuite;
using namespace memsuite::diagnostic;

namespace {

double play(environment& env, std::uint64_t seed, const std::function<double(const step_result&)>& policy,
            int* steps = nullptr) {
    step_result r = env.reset(seed);
    double total = 0;
    int n = 0;
    while (true) {
        r = env.step({policy(r)});
        total += r.reward;
        ++n;
        if (r.done()) break;
    }
    if (steps) *steps = n;
    return total;
}

int hot(const std::vector<float>& v, std::size_t begin, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i)
        if (v[begin + i] > 0.5f) return static_cast<int>(i);
    return -1;
}

}  // namespace

// --- MemoryLength ---------------------------------------------------------------

TEST(MemoryLength, SingleBitExamples) {
    auto env = test::make_env("MemoryLength", {{"memory_length", 1}, {"num_bits", 1}});
    env.reset(0);
    auto& s = test::impl<memory_length>(env).state();
    s.context = {1};
    s.query = 0;
    env.step({0});
    auto r = env.step({1});
    EXPECT_EQ(r.reward, 1.0);
    EXPECT_TRUE(r.terminated);

    env.reset(0);
    test::impl<memory_length>(env).state().context = {-1};
    env.step({0});
    EXPECT_EQ(env.step({1}).reward, -1.0);
}

TEST(MemoryLength, ObservationLayout) {
    auto env = test::make_env("MemoryLength", {{"memory_length", 4}, {"num_bits", 3}});
    auto r = env.reset(5);
    const auto& s = test::impl<memory_length>(env).state();
    EXPECT_EQ(r.observation[0], 0.0f);
    EXPECT_EQ(r.observation[2], 1.0f);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(r.observation[3 + i], static_cast<float>(s.context[i]));
    for (int t = 1; t <= 4; ++t) {
        r = env.step({0});
        EXPECT_EQ(r.observation[0], static_cast<float>(t));
        EXPECT_EQ(r.observation[2], 0.0f);
        for (int i = 0; i < 3; ++i) EXPECT_EQ(r.observation[3 + i], 0.0f);
        if (t < 4) EXPECT_EQ(r.observation[1], 0.0f);
    }
    EXPECT_EQ(r.observation[1], static_cast<float>(s.query));
    EXPECT_EQ(env.specs().meta.timeout, 5);
}

TEST(MemoryLength, RecallerWinsEveryContextAndQuery) {
    auto env = test::make_env("MemoryLength", {{"memory_length", 10}, {"num_bits", 3}});
    for (int ctx = 0; ctx < 8; ++ctx) {
        for (int q = 0; q < 3; ++q) {
            env.reset(0);
            auto& s = test::impl<memory_length>(env).state();
            for (int b = 0; b < 3; ++b) s.context[b] = (ctx >> b) & 1 ? 1 : -1;
            s.query = q;
            auto player = make_scripted_player(env.specs().meta, env.config().params);
            step_result r;
            r.observation = std::vector<float>();
            env.impl().observe(observation_mode::state, r.observation);
            double total = 0;
            while (!r.done()) {
                r = env.step(player->act(r.observation));
                total += r.reward;
            }
            EXPECT_EQ(total, 1.0) << ctx << " " << q;
        }
    }
}

// Any policy that ignores history sees the same final observation for both
// contexts, so its expected final reward is zero.
TEST(MemoryLength, MemorylessPlayIsChanceForShortMemories) {
    for (int L = 1; L <= 3; ++L) {
        auto env = test::make_env("MemoryLength", {{"memory_length", double(L)}, {"num_bits", 1}});
        for (int final_action = 0; final_action < 2; ++final_action) {
            double sum = 0;
            for (int bit : {-1, 1}) {
                env.reset(0);
                test::impl<memory_length>(env).state().context = {bit};
                step_result r;
                for (int t = 0; t <= L; ++t) r = env.step({t == L ? double(final_action) : 0.0});
                ASSERT_TRUE(r.terminated);
                sum += r.reward;
            }
            EXPECT_EQ(sum, 0.0) << "L=" << L;
        }
    }
}

// Brute-force model: reward = +1 iff the decoded action equals context[query].
TEST(MemoryLength, EnumerationMatchesModel) {
    for (int L = 1; L <= 3; ++L) {
        for (int B = 1; B <= 3; ++B) {
            auto env = test::make_env("MemoryLength", {{"memory_length", double(L)}, {"num_bits", double(B)}});
            for (int ctx = 0; ctx < (1 << B); ++ctx)
                for (int q = 0; q < B; ++q)
                    for (int a = 0; a < 2; ++a) {
                        env.reset(1);
                        auto& s = test::impl<memory_length>(env).state();
                        for (int b = 0; b < B; ++b) s.context[b] = (ctx >> b) & 1 ? 1 : -1;
                        s.query = q;
                        step_result r;
                        for (int t = 0; t <= L; ++t) r = env.step({t == L ? double(a) : 0.0});
                        const int bit = (ctx >> q) & 1;
                        EXPECT_EQ(r.reward, bit == a ? 1.0 : -1.0);
                    }
        }
    }
}

// --- MemoryCards ----------------------------------------------------------------

TEST(MemoryCards, PerfectPlay) {
    auto env = test::make_env("MemoryCards");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        int steps = 0;
        const double total = play(
            env, seed,
            [&](const step_result&) {
                const auto& s = test::impl<memory_cards>(env).state();
                for (int i = 0; i < 10; ++i)
                    if (i != s.revealed && s.deck[i] == s.deck[s.revealed]) return double(i);
                return 0.0;
            },
            &steps);
        EXPECT_EQ(total, 0.0);
        EXPECT_EQ(steps, 5);
    }
}

TEST(MemoryCards, SelfAndRemovedPositionsAreIncorrect) {
    auto env = test::make_env("MemoryCards");
    env.reset(3);
    auto& s = test::impl<memory_cards>(env).state();
    EXPECT_EQ(env.step({double(s.revealed)}).reward, -1.0);
    int pair = -1;
    for (int i = 0; i < 10; ++i)
        if (i != s.revealed && s.deck[i] == s.deck[s.revealed]) pair = i;
    const int first = s.revealed;
    EXPECT_EQ(env.step({double(pair)}).reward, 0.0);
    EXPECT_TRUE(s.removed[first] && s.removed[pair]);
    EXPECT_EQ(env.step({double(first)}).reward, -1.0);
}

// The revealed card's pair is never removed, so a uniform guess over all
// positions is correct with probability 1/10 on every step. The expected
// number of incorrect guesses follows from a small dynamic program.
TEST(MemoryCards, RandomBaselineMatchesDynamicProgram) {
    const int T = 50, pairs = 5;
    std::vector<std::vector<double>> prob(T + 1, std::vector<double>(pairs + 1, 0.0));
    prob[0][0] = 1.0;
    double expected = 0;
    for (int t = 0; t < T; ++t)
        for (int found = 0; found < pairs; ++found) {
            const double p = prob[t][found];
            prob[t + 1][found + 1] += p * 0.1;
            prob[t + 1][found] += p * 0.9;
            expected -= p * 0.9;
        }

    auto env = test::make_env("MemoryCards");
    rng g(77);
    const int episodes = 100000;
    double sum = 0, sum2 = 0;
    for (int e = 0; e < episodes; ++e) {
        const double total = play(env, e, [&](const step_result&) { return double(g.below(10)); });
        sum += total;
        sum2 += total * total;
    }
    const double mean = sum / episodes;
    const double sem = std::sqrt((sum2 / episodes - mean * mean) / episodes);
    EXPECT_NEAR(mean, expected, 4 * sem);
}

// --- RepeatPrevious / RepeatFirst / CountRecall ---------------------------------

TEST(RepeatPrevious, EchoWithKOneSumsToOne) {
    auto env = test::make_env("RepeatPrevious", {{"k", 1}});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::vector<int> seen;
        const double total = play(env, seed, [&](const step_result& r) {
            seen.push_back(hot(r.observation, 0, 4));
            return seen.size() > 1 ? double(seen[seen.size() - 2]) : 0.0;
        });
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(RepeatPrevious, WarmupUnscored) {
    auto env = test::make_env("RepeatPrevious");
    env.reset(2);
    for (int t = 0; t < 4; ++t)
        for (double a : {0.0}) EXPECT_EQ(env.step({a + t % 4}).reward, 0.0);
    EXPECT_NE(env.step({0}).reward, 0.0);
}

TEST(RepeatPrevious, RandomBaselineIsMinusHalf) {
    auto env = test::make_env("RepeatPrevious");
    rng g(5);
    const int episodes = 20000;
    double sum = 0, sum2 = 0;
    for (int e = 0; e < episodes; ++e) {
        const double total = play(env, e, [&](const step_result&) { return double(g.below(4)); });
        sum += total;
        sum2 += total * total;
    }
    const double mean = sum / episodes;
    const double sem = std::sqrt((sum2 / episodes - mean * mean) / episodes);
    EXPECT_NEAR(mean, 2 * 0.25 - 1, 4 * sem);
}

TEST(RepeatPrevious, ScriptedPlayerIsPerfect) {
    auto env = test::make_env("RepeatPrevious");
    auto player = make_scripted_player(env.specs().meta);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        player->reset();
        EXPECT_NEAR(play(env, seed, [&](const step_result& r) { return player->act(r.observation)[0]; }), 1.0,
                    1e-12);
    }
}

TEST(RepeatFirst, PerfectRecall) {
    auto env = test::make_env("RepeatFirst");
    int first = -1;
    const double total = play(env, 8, [&](const step_result& r) {
        if (r.observation[4] > 0.5f) first = hot(r.observation, 0, 4);
        return double(first);
    });
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(CountRecall, FirstStepCountIsZero) {
    auto env = test::make_env("CountRecall");
    env.reset(4);
    EXPECT_GT(env.step({0}).reward, 0.0);
}

TEST(CountRecall, ExplicitSequence) {
    auto env = test::make_env("CountRecall");
    env.reset(0);
    auto& s = test::impl<count_recall>(env).state();
    // Shown so far: a, b, a (a = 0, b = 1); query a.
    s.counts = {2, 1, 0, 0};
    s.query = 0;
    EXPECT_GT(env.step({2}).reward, 0.0);
}

TEST(CountRecall, RecountOracle) {
    auto env = test::make_env("CountRecall");
    auto player = make_scripted_player(env.specs().meta);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::vector<int> stream;
        step_result r = env.reset(seed);
        double total = 0;
        player->reset();
        while (!r.done()) {
            const int next = hot(r.observation, 0, 4), query = hot(r.observation, 4, 4);
            const int recount = static_cast<int>(std::count(stream.begin(), stream.end(), query));
            const double a = player->act(r.observation)[0];
            EXPECT_EQ(a, recount);
            stream.push_back(next);
            r = env.step({a});
            total += r.reward;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

// --- HigherLower --------------------------------------------------------------

TEST(HigherLower, MaxRankLowerIsCorrect) {
    auto env = test::make_env("HigherLower");
    env.reset(0);
    auto& s = test::impl<higher_lower>(env).state();
    s.deck[0] = 51;  // rank 12
    s.deck[1] = 3;   // rank 0
    EXPECT_NEAR(env.step({1}).reward, 1.0 / 51, 1e-15);
}

TEST(HigherLower, TieScoresZero) {
    for (double a : {0.0, 1.0}) {
        auto env = test::make_env("HigherLower");
        env.reset(0);
        auto& s = test::impl<higher_lower>(env).state();
        std::swap(s.deck[1], *std::find(s.deck.begin() + 1, s.deck.end(), s.deck[0] ^ 1));
        EXPECT_EQ(env.step({a}).reward, 0.0);
    }
}

// Card-counting player built only from observations; every reward is checked
// against the dealt deck and the episode lasts exactly 51 predictions.
TEST(HigherLower, CountingPlayerRewardsMatchDeck) {
    auto env = test::make_env("HigherLower");
    double mean = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::vector<int> remaining(13, 4);
        step_result r = env.reset(seed);
        const auto deck = test::impl<higher_lower>(env).state().deck;
        double total = 0;
        int t = 0;
        while (!r.done()) {
            const int ref = hot(r.observation, 0, 13);
            if (t == 0) --remaining[ref];
            int above = 0, below = 0;
            for (int k = 0; k < 13; ++k) (k > ref ? above : below) += k == ref ? 0 : remaining[k];
            const double a = above >= below ? 0 : 1;
            r = env.step({a});
            const int next = higher_lower::rank_of(deck[t + 1]);
            const double expect = next == ref ? 0.0 : (((next > ref) == (a == 0)) ? 1.0 : -1.0) / 51;
            EXPECT_EQ(r.reward, expect);
            total += r.reward;
            --remaining[hot(r.observation, 0, 13) < 0 ? next : next];
            ++t;
        }
        EXPECT_EQ(t, 51);
        mean += total / 100;
    }
    EXPECT_GT(mean, 0.5);
}

// --- Battleship -----------------------------------------------------------------

TEST(Battleship, SweepCollectsEveryHitWithoutPenalty) {
    auto env = test::make_env("Battleship");
    auto player = make_scripted_player(env.specs().meta);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        player->reset();
        double total = 0;
        int penalties = 0;
        step_result r = env.reset(seed);
        while (!r.done()) {
            r = env.step(player->act(r.observation));
            total += r.reward;
            penalties += r.reward < 0;
        }
        EXPECT_TRUE(r.terminated);
        EXPECT_NEAR(total, 1.0, 1e-12);
        EXPECT_EQ(penalties, 0);
    }
}

TEST(Battleship, RepeatShotPenalty) {
    auto env = test::make_env("Battleship");
    env.reset(1);
    env.step({0});
    EXPECT_DOUBLE_EQ(env.step({0}).reward, -1.0 / 64);
}

TEST(Battleship, HitsMatchBoardReplay) {
    auto env = test::make_env("Battleship");
    rng g(9);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        env.reset(seed);
        const auto board = test::impl<battleship>(env).state().ship;
        EXPECT_EQ(std::count(board.begin(), board.end(), 1), 14);
        std::vector<int> shot(64, 0);
        int hits_seen = 0, recount = 0;
        step_result r;
        while (!r.done()) {
            const int a = g.below_int(64);
            r = env.step({double(a)});
            const int row = hot(r.observation, 0, 8), col = hot(r.observation, 8, 8);
            ASSERT_EQ(row * 8 + col, a);
            if (r.observation[16] > 0.5f && !shot[a]) ++hits_seen;
            if (!shot[a] && board[a]) ++recount;
            shot[a] = 1;
        }
        EXPECT_EQ(hits_seen, recount);
        EXPECT_EQ(test::impl<battleship>(env).state().hits, recount);
    }
}

TEST(Battleship, BoardHiddenFromObservation) {
    auto env = test::make_env("Battleship", {}, observation_mode::masked);
    env.reset(2);
    const auto before = env.step({10}).observation;
    auto& s = test::impl<battleship>(env).state();
    for (int i = 0; i < 64; ++i)
        if (!s.shot[i]) s.ship[i] ^= 1;
    std::vector<float> after;
    env.impl().observe(observation_mode::masked, after);
    EXPECT_EQ(before, after);
}

// --- Control tasks --------------------------------------------------------------

namespace {

// Reference cart-pole integrator written from the equations of motion.
struct reference_cartpole {
    double s[4];
    void step(bool right) {
        const double g = 9.8, mc = 1.0, mp = 0.1, l = 0.5, f = right ? 10.0 : -10.0, dt = 0.02;
        const double th = s[2], w = s[3];
        const double m = mc + mp;
        const double a = (f + mp * l * w * w * std::sin(th)) / m;
        const double alpha = (g * std::sin(th) - std::cos(th) * a) / (l * (4.0 / 3.0 - mp * std::pow(std::cos(th), 2) / m));
        const double acc = a - mp * l * alpha * std::cos(th) / m;
        s[1] = s[1] + dt * acc;
        s[0] = s[0] + dt * s[1];
        s[3] = s[3] + dt * alpha;
        s[2] = s[2] + dt * s[3];
    }
};

}  // namespace

TEST(StatelessCartpole, ObservesVelocitiesOnly) {
    auto env = test::make_env("StatelessCartpole");
    const auto r = env.reset(1);
    ASSERT_EQ(r.observation.size(), 2u);
    const auto& p = test::impl<stateless_cartpole>(env).state().phys;
    EXPECT_EQ(r.observation[0], static_cast<float>(p.x_dot));
    EXPECT_EQ(r.observation[1], static_cast<float>(p.theta_dot));
}

TEST(StatelessCartpole, MatchesReferenceIntegrator) {
    auto env = test::make_env("StatelessCartpole");
    env.reset(0);
    auto& p = test::impl<stateless_cartpole>(env).state().phys;
    p = cartpole_physics{};
    reference_cartpole ref{{0, 0, 0, 0}};
    for (int t = 0; t < 200; ++t) {
        const bool right = t % 2 == 1;
        const auto r = env.step({right ? 1.0 : 0.0});
        ref.step(right);
        EXPECT_NEAR(p.x, ref.s[0], 1e-12);
        EXPECT_NEAR(p.x_dot, ref.s[1], 1e-12);
        EXPECT_NEAR(p.theta, ref.s[2], 1e-12);
        EXPECT_NEAR(p.theta_dot, ref.s[3], 1e-12);
        EXPECT_EQ(r.reward, 1.0);
        if (r.done()) break;
    }
}

TEST(StatelessCartpole, TerminatesAtAngleLimit) {
    auto env = test::make_env("StatelessCartpole");
    env.reset(0);
    step_result r;
    int t = 0;
    while (!r.done()) {
        r = env.step({1});
        ++t;
    }
    EXPECT_TRUE(r.terminated);
    EXPECT_LT(t, 200);
    const auto& p = test::impl<stateless_cartpole>(env).state().phys;
    EXPECT_TRUE(std::abs(p.theta) > 12 * std::numbers::pi / 180 || std::abs(p.x) > 2.4);
}

TEST(StatelessCartpole, ZeroNoiseReproducesCleanVariant) {
    auto clean = test::make_env("StatelessCartpole");
    auto noisy = test::make_env("NoisyStatelessCartpole", {{"noise_sigma", 0.0}});
    EXPECT_TRUE(bitwise_equal(clean.reset(6), noisy.reset(6)));
    for (int t = 0; t < 30; ++t) {
        const double a = (t / 3) % 2;
        const auto a1 = clean.step({a});
        const auto a2 = noisy.step({a});
        ASSERT_EQ(a1.observation, a2.observation);
        if (a1.done()) break;
    }
}

TEST(StatelessCartpole, NoiseHasConfiguredScale) {
    auto env = test::make_env("NoisyStatelessCartpole");
    double s2 = 0;
    int n = 0;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        const auto r = env.reset(seed);
        const auto& p = test::impl<stateless_cartpole>(env).state().phys;
        const double e = r.observation[0] - p.x_dot;
        s2 += e * e;
        ++n;
    }
    EXPECT_NEAR(std::sqrt(s2 / n), 0.1, 0.01);
}

TEST(StatelessPendulum, MatchesReferenceAndReward) {
    auto env = test::make_env("StatelessPendulum");
    auto r = env.reset(3);
    ASSERT_EQ(r.observation.size(), 1u);
    auto& p = test::impl<stateless_pendulum>(env).state().phys;
    double th = p.theta, w = p.theta_dot;
    for (int t = 0; t < 200; ++t) {
        const double u = std::sin(0.3 * t) * 2.5;
        const double uc = std::max(-2.0, std::min(2.0, static_cast<double>(static_cast<float>(u))));
        double wrapped = std::remainder(th, 2 * std::numbers::pi);
        if (wrapped >= std::numbers::pi) wrapped -= 2 * std::numbers::pi;
        const double cost = wrapped * wrapped + 0.1 * w * w + 0.001 * uc * uc;
        w = std::max(-8.0, std::min(8.0, w + (15.0 * std::sin(th) + 3.0 * uc) * 0.05));
        th += w * 0.05;
        r = env.step({u});
        EXPECT_NEAR(r.reward, -cost, 1e-9);
        EXPECT_NEAR(p.theta, th, 1e-12);
        EXPECT_NEAR(p.theta_dot, w, 1e-12);
        EXPECT_EQ(r.observation[0], static_cast<float>(p.theta_dot));
    }
    EXPECT_TRUE(r.truncated);
}

// --- Mazes ------------------------------------------------------------------------

TEST(PassiveTMaze, MinimalMaze) {
    auto env = test::make_env("PassiveTMaze", {{"corridor_length", 1}});
    env.reset(0);
    test::impl<passive_tmaze>(env).state().goal_up = true;
    env.step({move_right});
    const auto r = env.step({move_up});
    EXPECT_EQ(r.reward, 1.0);
    EXPECT_TRUE(r.terminated);
    EXPECT_EQ(env.specs().meta.correlation_horizon, 2);
}

TEST(PassiveTMaze, CueOnlyAtFirstStep) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto a = test::make_env("PassiveTMaze", {{"corridor_length", 5}});
        auto b = test::make_env("PassiveTMaze", {{"corridor_length", 5}});
        const auto ra = a.reset(seed);
        b.reset(seed);
        test::impl<passive_tmaze>(b).state().goal_up = !test::impl<passive_tmaze>(a).state().goal_up;
        std::vector<float> ob;
        b.impl().observe(observation_mode::masked, ob);
        EXPECT_NE(ra.observation, ob);
        for (double act : {1.0, 1.0, 0.0, 2.0, 1.0, 1.0, 1.0, 1.0}) {
            const auto x = a.step({act}), y = b.step({act});
            ASSERT_EQ(x.observation, y.observation);
            if (x.done()) break;
        }
    }
}

// BFS over the corridor graph: the cue is seen at the start cell and used at
// the junction, so the horizon is the distance plus one.
TEST(PassiveTMaze, CorrelationHorizonFromBfs) {
    for (int L : {1, 4, 10, 25}) {
        std::vector<int> dist(L + 1, -1);
        std::deque<int> q{0};
        dist[0] = 0;
        while (!q.empty()) {
            const int x = q.front();
            q.pop_front();
            for (int nx : {x - 1, x + 1})
                if (nx >= 0 && nx <= L && dist[nx] < 0) {
                    dist[nx] = dist[x] + 1;
                    q.push_back(nx);
                }
        }
        auto env = test::make_env("PassiveTMaze", {{"corridor_length", double(L)}});
        EXPECT_EQ(env.specs().meta.correlation_horizon, dist[L] + 1);
        EXPECT_EQ(env.specs().meta.timeout, L + 2);
    }
}

TEST(PassiveTMaze, WallsBlockWithoutPenalty) {
    auto env = test::make_env("PassiveTMaze", {{"corridor_length", 3}});
    env.reset(0);
    auto r = env.step({move_left});
    EXPECT_EQ(r.reward, 0.0);
    EXPECT_EQ(test::impl<passive_tmaze>(env).state().x, 0);
    r = env.step({move_up});
    EXPECT_FALSE(r.done());
}

TEST(MinigridMemory, TerminalRewardFormula) {
    EXPECT_NEAR(minigrid_memory::terminal_reward(30, 100), 0.73, 1e-12);
    auto env = test::make_env("MinigridMemory");
    env.reset(0);
    auto& s = test::impl<minigrid_memory>(env).state();
    s.x = 1;
    const int match = s.up_object == s.room_object ? move_up : move_down;
    // Walk to the junction (6 steps) and idle against the end wall until t = 29.
    for (int t = 1; t < 30; ++t) EXPECT_EQ(env.step({move_right}).reward, 0.0);
    const auto r = env.step({double(match)});
    EXPECT_TRUE(r.terminated);
    EXPECT_NEAR(r.reward, 0.73, 1e-12);
}

TEST(MinigridMemory, WrongArmScoresZero) {
    auto env = test::make_env("MinigridMemory");
    env.reset(1);
    auto& s = test::impl<minigrid_memory>(env).state();
    const int wrong = s.up_object == s.room_object ? move_down : move_up;
    while (s.x < 7) env.step({move_right});
    const auto r = env.step({double(wrong)});
    EXPECT_TRUE(r.terminated);
    EXPECT_EQ(r.reward, 0.0);
}

TEST(MinigridMemory, RoomObjectHiddenAwayFromRoom) {
    auto env = test::make_env("MinigridMemory", {}, observation_mode::masked);
    env.reset(2);
    auto& s = test::impl<minigrid_memory>(env).state();
    s.x = 4;
    std::vector<float> a, b;
    env.impl().observe(observation_mode::masked, a);
    s.room_object ^= 1;
    env.impl().observe(observation_mode::masked, b);
    EXPECT_EQ(a, b);
}

namespace {

std::vector<int> grid_path(int n, int from, int to) {
    std::vector<int> prev(n * n, -2);
    std::deque<int> q{from};
    prev[from] = -1;
    while (!q.empty()) {
        const int c = q.front();
        q.pop_front();
        const int r = c / n, k = c % n;
        for (int nb : {r > 0 ? c - n : -1, r < n - 1 ? c + n : -1, k > 0 ? c - 1 : -1, k < n - 1 ? c + 1 : -1})
            if (nb >= 0 && prev[nb] == -2) {
                prev[nb] = c;
                q.push_back(nb);
            }
    }
    std::vector<int> path;
    for (int c = to; c != from; c = prev[c]) path.push_back(c);
    std::reverse(path.begin(), path.end());
    return path;
}

double numpad_move(int n, int from, int to) {
    if (to == from - n) return numpad::up;
    if (to == from + n) return numpad::down;
    if (to == from - 1) return numpad::left;
    return numpad::right;
}

}  // namespace

TEST(Numpad, PerfectPlayScoresSequenceLength) {
    auto env = test::make_env("Numpad");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        env.reset(seed);
        auto& s = test::impl<numpad>(env).state();
        const auto seq = s.sequence;
        for (std::size_t i = 1; i < seq.size(); ++i) {
            const int d = std::abs(seq[i] - seq[i - 1]);
            EXPECT_TRUE(d == 1 || d == 3);
        }
        std::vector<int> route;
        if (s.pos == seq[0]) {
            // Step off and back on to press the first tile.
            const int off = grid_path(3, seq[0], seq[0] == 4 ? 1 : 4).front();
            route.push_back(off);
        }
        const auto to_first = grid_path(3, route.empty() ? s.pos : route.back(), seq[0]);
        route.insert(route.end(), to_first.begin(), to_first.end());
        route.insert(route.end(), seq.begin() + 1, seq.end());
        double total = 0;
        int pos = s.pos;
        step_result r;
        for (int c : route) {
            r = env.step({numpad_move(3, pos, c)});
            pos = c;
            total += r.reward;
        }
        EXPECT_TRUE(r.terminated) << seed;
        // Walking to the first tile may cross it only at the end of the route.
        EXPECT_EQ(total, 3.0) << seed;
    }
}

TEST(Numpad, WrongTileResetsProgress) {
    auto env = test::make_env("Numpad");
    env.reset(4);
    auto& s = test::impl<numpad>(env).state();
    s.sequence = {0, 1, 2};
    s.pos = 3;
    EXPECT_EQ(env.step({numpad::up}).reward, 1.0);     // 0
    EXPECT_EQ(env.step({numpad::right}).reward, 1.0);  // 1
    EXPECT_EQ(env.step({numpad::down}).reward, 0.0);   // 4: wrong
    EXPECT_EQ(s.progress, 0);
    EXPECT_EQ(env.step({numpad::up}).reward, 0.0);     // 1 out of order
    EXPECT_EQ(env.step({numpad::left}).reward, 1.0);   // 0 again after reset
    EXPECT_EQ(s.progress, 1);
}

TEST(PassiveVisualMatch, PerfectPlayAndCueHidden) {
    auto env = test::make_env("PassiveVisualMatch", {}, observation_mode::masked);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        step_result r = env.reset(seed);
        const int target = hot(r.observation, 0, 9);
        auto& s = test::impl<passive_visual_match>(env).state();
        ASSERT_EQ(target, s.target);
        for (int t = 0; t < 15; ++t) {
            r = env.step({0});
            EXPECT_EQ(r.reward, 0.0);
            if (t >= 4 && t < 14) {
                std::vector<float> before = r.observation, after;
                const int keep = s.target;
                s.target = (s.target + 1) % 9;
                env.impl().observe(observation_mode::masked, after);
                s.target = keep;
                EXPECT_EQ(before, after);
            }
        }
        int pad = -1;
        for (int k = 0; k < 3; ++k)
            if (hot(r.observation, 9 * (k + 1), 9) == target) pad = k;
        ASSERT_GE(pad, 0);
        r = env.step({double(pad)});
        EXPECT_EQ(r.reward, 1.0);
        EXPECT_TRUE(r.terminated);
    }
}

TEST(MortarMayhem, PerfectPlayAndFirstErrorEnds) {
    auto env = test::make_env("MortarMayhem");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        step_result r = env.reset(seed);
        std::vector<int> cmds;
        for (int t = 0; t < 10; ++t) {
            cmds.push_back(hot(r.observation, 0, 9));
            r = env.step({0});
            EXPECT_EQ(r.reward, 0.0);
        }
        double total = 0;
        for (int c : cmds) {
            r = env.step({double(c)});
            total += r.reward;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        EXPECT_TRUE(r.terminated && r.info.success);
    }
    step_result r = env.reset(3);
    const auto cmds = test::impl<mortar_mayhem>(env).state().commands;
    for (int t = 0; t < 10; ++t) env.step({0});
    const auto& s = test::impl<mortar_mayhem>(env).state();
    for (int a = 0; a < 9; ++a) {
        const int nx = std::clamp(s.x + mortar_mayhem::dx[a], 0, 4), ny = std::clamp(s.y + mortar_mayhem::dy[a], 0, 4);
        if (nx != s.x + mortar_mayhem::dx[cmds[0]] || ny != s.y + mortar_mayhem::dy[cmds[0]]) {
            r = env.step({double(a)});
            EXPECT_TRUE(r.terminated);
            EXPECT_FALSE(r.info.success);
            EXPECT_EQ(r.reward, 0.0);
            break;
        }
    }
}

TEST(MysteryPath, PerfectPlayAndTeleport) {
    auto env = test::make_env("MysteryPath");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        env.reset(seed);
        const auto path = test::impl<mystery_path>(env).state().path;
        double total = 0;
        step_result r;
        for (std::size_t i = 1; i < path.size(); ++i) {
            const int d = path[i] - path[i - 1];
            r = env.step({d == 1 ? double(move_right) : d == -1 ? double(move_left) : d > 0 ? double(move_down) : double(move_up)});
            total += r.reward;
        }
        EXPECT_TRUE(r.terminated);
        EXPECT_NEAR(total, 0.1 * (path.size() - 1), 1e-12);
    }
    env.reset(1);
    auto& s = test::impl<mystery_path>(env).state();
    const int start = s.path[0];
    for (int a : {move_up, move_down, move_right}) {
        const int c = start % 7, row = start / 7;
        const int tgt = a == move_up ? (row > 0 ? start - 7 : -1) : a == move_down ? (row < 6 ? start + 7 : -1) : start + 1;
        if (tgt >= 0 && !s.on_path[tgt] && c < 6) {
            const auto r = env.step({double(a)});
            EXPECT_EQ(r.reward, 0.0);
            EXPECT_EQ(s.pos, start);
            EXPECT_EQ(r.observation.back(), 1.0f);
            break;
        }
    }
}

TEST(Autoencode, PerfectReproductionAndDeckConservation) {
    auto env = test::make_env("Autoencode");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        step_result r = env.reset(seed);
        auto deck = test::impl<autoencode>(env).state().deck;
        std::vector<int> seen;
        double total = 0;
        while (!r.done()) {
            const int card = hot(r.observation, 0, 4);
            const bool watch = r.observation[4] > 0.5f;
            if (card >= 0) seen.push_back(card);
            if (!watch && seen.size() == 12 && r.info.phase == phase_id::observation) ADD_FAILURE();
            const int j = r.info.elapsed_steps - 11;
            r = env.step({j >= 0 ? double(seen[j]) : 0.0});
            total += r.reward;
            EXPECT_EQ(test::impl<autoencode>(env).state().deck, deck);
        }
        EXPECT_EQ(seen, deck);
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(Concentration, PerfectPlayAndPairConservation) {
    auto env = test::make_env("Concentration");
    env.reset(7);
    auto& s = test::impl<concentration>(env).state();
    std::map<int, int> hist;
    for (int r : s.ranks) ++hist[r];
    for (auto [rank, n] : hist) EXPECT_EQ(n, 4);
    std::vector<int> order(52);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return s.ranks[a] < s.ranks[b]; });
    double total = 0;
    step_result r;
    for (int c : order) {
        r = env.step({double(c)});
        total += r.reward;
    }
    EXPECT_EQ(total, 26.0);
    EXPECT_TRUE(r.info.success);
    EXPECT_EQ(std::count(r.observation.begin(), r.observation.end(), -1.0f), 52);
    std::map<int, int> after;
    for (int rk : s.ranks) ++after[rk];
    EXPECT_EQ(hist, after);
    int steps = 52;
    while (!r.done()) {
        r = env.step({0});
        ++steps;
    }
    EXPECT_EQ(steps, 104);
}

TEST(Concentration, MismatchFlipsBack) {
    auto env = test::make_env("Concentration");
    env.reset(1);
    auto& s = test::impl<concentration>(env).state();
    int b = 1;
    while (s.ranks[b] == s.ranks[0]) ++b;
    env.step({0});
    const auto r = env.step({double(b)});
    EXPECT_EQ(r.reward, 0.0);
    EXPECT_EQ(r.observation[0], static_cast<float>(s.ranks[0] + 1));
    const auto r2 = env.step({double(b + 1 == 52 ? 2 : b + 1)});
    EXPECT_EQ(r2.observation[0], 0.0f);
}

TEST(MineSweeper, DigitsMatchRecount) {
    auto env = test::make_env("MineSweeper");
    rng g(3);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        step_result r = env.reset(seed);
        const auto mines = test::impl<minesweeper>(env).state().mine;
        EXPECT_EQ(std::count(mines.begin(), mines.end(), 1), 10);
        while (!r.done()) {
            const int a = g.below_int(64);
            r = env.step({double(a)});
            if (mines[a]) {
                EXPECT_EQ(r.reward, -1.0);
                EXPECT_TRUE(r.terminated);
                continue;
            }
            int recount = 0;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    const int rr = a / 8 + dr, cc = a % 8 + dc;
                    if ((dr || dc) && rr >= 0 && rr < 8 && cc >= 0 && cc < 8) recount += mines[rr * 8 + cc];
                }
            EXPECT_EQ(hot(r.observation, 16, 9), recount);
        }
    }
}

TEST(MineSweeper, ClearingTheBoardScoresOne) {
    auto env = test::make_env("MineSweeper");
    env.reset(5);
    const auto mines = test::impl<minesweeper>(env).state().mine;
    double total = 0;
    step_result r;
    for (int c = 0; c < 64; ++c)
        if (!mines[c]) {
            r = env.step({double(c)});
            total += r.reward;
        }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_TRUE(r.terminated && r.info.success);
}

TEST(Bandit, MeansResampledEachReset) {
    auto env = test::make_env("MultiarmedBandit");
    env.reset(1);
    const auto a = test::impl<bandit>(env).state().means;
    env.reset(2);
    EXPECT_NE(a, test::impl<bandit>(env).state().means);
    const auto r = env.step({3});
    EXPECT_EQ(r.observation[3], 1.0f);
    EXPECT_EQ(r.observation[10], static_cast<float>(r.reward));
    int n = 1;
    step_result x = r;
    while (!x.done()) {
        x = env.step({0});
        ++n;
    }
    EXPECT_EQ(n, 100);
}

TEST(Labyrinth, MazeIsASpanningTree) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        rng g(seed);
        const int n = 11;
        const auto wall = labyrinth::generate(n, g);
        int free = 0, edges = 0;
        for (int c = 0; c < n * n; ++c) {
            if (wall[c]) continue;
            ++free;
            if (!wall[c + 1]) ++edges;
            if (!wall[c + n]) ++edges;
        }
        EXPECT_EQ(free, edges + 1);  // connected acyclic grid graph
        std::vector<int> seen(n * n, 0);
        std::deque<int> q{n + 1};
        seen[n + 1] = 1;
        int reached = 0;
        while (!q.empty()) {
            const int c = q.front();
            q.pop_front();
            ++reached;
            for (int nb : {c - 1, c + 1, c - n, c + n})
                if (!wall[nb] && !seen[nb]) {
                    seen[nb] = 1;
                    q.push_back(nb);
                }
        }
        EXPECT_EQ(reached, free);
    }
}

TEST(Labyrinth, ExploreAndEscapeRewards) {
    auto explore = test::make_env("LabyrinthExplore");
    explore.reset(3);
    auto& s = test::impl<labyrinth>(explore).state();
    const int n = 11;
    // Depth-first walk over the tree visits every cell.
    std::vector<int> stack{s.pos}, seen(n * n, 0);
    seen[s.pos] = 1;
    double total = 0;
    int steps = 0;
    step_result r;
    while (!stack.empty() && !r.done()) {
        const int c = stack.back();
        int next = -1;
        for (int nb : {c - 1, c + 1, c - n, c + n})
            if (!s.wall[nb] && !seen[nb]) next = nb;
        const int tgt = next >= 0 ? next : (stack.size() > 1 ? stack[stack.size() - 2] : -1);
        if (tgt < 0) break;
        const int d = tgt - c;
        r = explore.step({d == -1 ? double(move_left) : d == 1 ? double(move_right) : d < 0 ? double(move_up) : double(move_down)});
        ++steps;
        total += r.reward;
        if (next >= 0) {
            seen[next] = 1;
            stack.push_back(next);
        } else {
            stack.pop_back();
        }
    }
    EXPECT_TRUE(r.terminated && r.info.success);
    EXPECT_NEAR(total, double(s.free_cells - 1) / s.free_cells - 0.001 * steps, 1e-9);

    auto escape = test::make_env("LabyrinthEscape");
    escape.reset(3);
    auto& e = test::impl<labyrinth>(escape).state();
    const auto path = [&] {
        std::vector<int> prev(n * n, -2);
        std::deque<int> q{e.pos};
        prev[e.pos] = -1;
        while (!q.empty()) {
            const int c = q.front();
            q.pop_front();
            for (int nb : {c - 1, c + 1, c - n, c + n})
                if (!e.wall[nb] && prev[nb] == -2) {
                    prev[nb] = c;
                    q.push_back(nb);
                }
        }
        std::vector<int> p;
        for (int c = e.exit; prev[c] != -1; c = prev[c]) p.push_back(c);
        std::reverse(p.begin(), p.end());
        return p;
    }();
    int pos = e.pos;
    double sum = 0;
    for (int c : path) {
        const int d = c - pos;
        r = escape.step({d == -1 ? double(move_left) : d == 1 ? double(move_right) : d < 0 ? double(move_up) : double(move_down)});
        sum += r.reward;
        pos = c;
    }
    EXPECT_EQ(sum, 1.0);
    EXPECT_TRUE(r.terminated);
}

// Perturbing hidden-only state leaves the masked observation unchanged.
TEST(LeakFreedom, HiddenStatePerturbations) {
    {
        auto env = test::make_env("MemoryLength", {}, observation_mode::masked);
        env.reset(1);
        env.step({0});
        std::vector<float> a, b;
        env.impl().observe(observation_mode::masked, a);
        auto& s = test::impl<memory_length>(env).state();
        s.context[0] = -s.context[0];
        s.query = 0;
        env.impl().observe(observation_mode::masked, b);
        EXPECT_EQ(a, b);
    }
    {
        auto env = test::make_env("HigherLower", {}, observation_mode::masked);
        env.reset(1);
        std::vector<float> a, b;
        env.impl().observe(observation_mode::masked, a);
        auto& s = test::impl<higher_lower>(env).state();
        std::reverse(s.deck.begin() + 1, s.deck.end());
        env.impl().observe(observation_mode::masked, b);
        EXPECT_EQ(a, b);
    }
    {
        auto env = test::make_env("MineSweeper", {}, observation_mode::masked);
        env.reset(1);
        std::vector<float> a, b;
        env.impl().observe(observation_mode::masked, a);
        auto& s = test::impl<minesweeper>(env).state();
        std::reverse(s.mine.begin(), s.mine.end());
        env.impl().observe(observation_mode::masked, b);
        EXPECT_EQ(a, b);
    }
    {
        auto env = test::make_env("Concentration", {}, observation_mode::masked);
        env.reset(1);
        std::vector<float> a, b;
        env.impl().observe(observation_mode::masked, a);
        auto& s = test::impl<concentration>(env).state();
        std::reverse(s.ranks.begin(), s.ranks.end());
        env.impl().observe(observation_mode::masked, b);
        EXPECT_EQ(a, b);
    }
    {
        auto env = test::make_env("StatelessCartpole", {}, observation_mode::masked);
        env.reset(1);
        std::vector<float> a, b;
        env.impl().observe(observation_mode::masked, a);
        auto& p = test::impl<stateless_cartpole>(env).state().phys;
        p.x += 1.0;
        p.theta += 0.1;
        env.impl().observe(observation_mode::masked, b);
        EXPECT_EQ(a, b);
    }
    {
        auto env = test::make_env("Numpad", {}, observation_mode::masked);
        env.reset(1);
        std::vector<float> a, b;
        env.impl().observe(observation_mode::masked, a);
        auto& s = test::impl<numpad>(env).state();
        std::reverse(s.sequence.begin(), s.sequence.end());
        env.impl().observe(observation_mode::masked, b);
        EXPECT_EQ(a, b);
    }
}
