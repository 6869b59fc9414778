#include <gtest/gtest.h>

#include <memsuite/core/error.hpp>
#include <memsuite/core/registry.hpp>
#include <memsuite/core/vector_engine.hpp>

#include "helpers.hpp"

using namespace memsuite;

namespace {

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return errc::bad_request;
}

}  // namespace

TEST(Space, Validation) {
    EXPECT_NO_THROW(space_spec::discrete(2).validate());
    EXPECT_EQ(code_of([] { space_spec::discrete(1).validate(); }), errc::bad_param);
    EXPECT_EQ(code_of([] { space_spec::box({1.0}, {0.0}, {1}).validate(); }), errc::bad_param);
    EXPECT_EQ(space_spec::uniform_box(0, 1, {3, 4}).flat_size(), 12u);
    EXPECT_EQ(space_spec::discrete(9).flat_size(), 1u);
}

TEST(Registry, UnknownTask) {
    EXPECT_EQ(code_of([] { test::make_env("NoSuchTask"); }), errc::unknown_task);
}

TEST(Registry, SuffixAndDefaultMode) {
    auto env = test::make_env("MemoryLength-v0");
    EXPECT_EQ(env.specs().meta.task_id, "MemoryLength");
    EXPECT_EQ(env.config().mode, "default");
}

TEST(Registry, InvalidMode) {
    env_config c;
    c.task_id = "MemoryLength";
    c.mode = "Hard";
    EXPECT_EQ(code_of([&] { make(c); }), errc::invalid_mode);
}

TEST(Registry, UnsupportedObservationMode) {
    env_config c;
    c.task_id = "MemoryLength";
    c.obs_mode = observation_mode::rgb;
    EXPECT_EQ(code_of([&] { make(c); }), errc::bad_param);
}

TEST(Registry, BadParams) {
    EXPECT_EQ(code_of([] { test::make_env("MemoryLength", {{"memory_length", 0}}); }), errc::bad_param);
    EXPECT_EQ(code_of([] { test::make_env("MemoryLength", {{"memory_length", 2.5}}); }), errc::bad_param);
    EXPECT_EQ(code_of([] { test::make_env("MemoryLength", {{"bogus", 1}}); }), errc::bad_param);
}

TEST(Registry, EveryTaskMakesAndResets) {
    for (const auto& meta : list_tasks()) {
        env_config c;
        c.task_id = meta.task_id;
        c.obs_mode = meta.observation_modes.front();
        auto env = make(c);
        const auto r = env.reset(1);
        EXPECT_EQ(r.observation.size(), env.specs().observation.flat_size()) << meta.task_id;
        EXPECT_GT(meta.correlation_horizon, 1) << meta.task_id;
        EXPECT_GT(meta.timeout, 0) << meta.task_id;
        EXPECT_EQ(static_cast<int>(r.info.oracle.size()), layout_size(meta.oracle_info_schema)) << meta.task_id;
    }
}

TEST(Environment, StepBeforeResetFails) {
    auto env = test::make_env("RepeatFirst");
    EXPECT_EQ(code_of([&] { env.step({0}); }), errc::stepped_finished);
}

TEST(Environment, ActionErrors) {
    auto env = test::make_env("RepeatFirst");
    env.reset(0);
    EXPECT_EQ(code_of([&] { env.step({0, 1}); }), errc::action_shape);
    EXPECT_EQ(code_of([&] { env.step({0.5}); }), errc::action_shape);
    EXPECT_EQ(code_of([&] { env.step({4}); }), errc::action_range);
    EXPECT_EQ(code_of([&] { env.step({-1}); }), errc::action_range);
    EXPECT_NO_THROW(env.step({3}));
}

TEST(Environment, StepAfterDoneFails) {
    auto env = test::make_env("MemoryLength", {{"memory_length", 1}});
    env.reset(0);
    env.step({0});
    const auto r = env.step({0});
    EXPECT_TRUE(r.terminated);
    EXPECT_EQ(code_of([&] { env.step({0}); }), errc::stepped_finished);
}

TEST(Environment, TruncationAtTimeout) {
    auto env = test::make_env("RepeatFirst", {{"length", 5}});
    env.reset(3);
    step_result r;
    for (int i = 0; i < 5; ++i) {
        EXPECT_FALSE(r.done());
        r = env.step({0});
    }
    EXPECT_TRUE(r.truncated);
    EXPECT_FALSE(r.terminated);
    EXPECT_EQ(r.info.elapsed_steps, 5);
}

TEST(Environment, SameSeedSameTrajectory) {
    auto a = test::make_env("Battleship");
    auto b = test::make_env("Battleship");
    EXPECT_TRUE(bitwise_equal(a.reset(9), b.reset(9)));
    for (int i = 0; i < 60; ++i) {
        const double act = (i * 7) % 64;
        ASSERT_TRUE(bitwise_equal(a.step({act}), b.step({act})));
    }
}

TEST(Environment, OracleInfoOnlyInStateMode) {
    auto s = test::make_env("RepeatFirst", {}, observation_mode::state);
    auto m = test::make_env("RepeatFirst", {}, observation_mode::masked);
    EXPECT_FALSE(s.reset(1).info.oracle.empty());
    EXPECT_TRUE(m.reset(1).info.oracle.empty());
}

TEST(Environment, CopyIsIndependent) {
    auto a = test::make_env("CountRecall");
    a.reset(4);
    a.step({0});
    environment b = a;
    const auto ra = a.step({1});
    const auto rb = b.step({1});
    EXPECT_TRUE(bitwise_equal(ra, rb));
    a.step({0});
    EXPECT_EQ(b.elapsed_steps(), 2);
}

TEST(VectorEngine, LaneSeeds) {
    env_config c;
    c.task_id = "RepeatFirst";
    vector_engine v(c, 4, 100);
    EXPECT_EQ(v.lane_seed(0, 0), 100u);
    EXPECT_EQ(v.lane_seed(3, 0), 103u);
    EXPECT_EQ(v.lane_seed(1, 2), 100u + 1 + 8);
}

TEST(VectorEngine, MatchesIndependentEnvironments) {
    env_config c;
    c.task_id = "RepeatFirst";
    c.params = {{"length", 3}};
    const int n = 3;
    vector_engine v(c, n, 10);
    const auto& first = v.reset();
    std::vector<environment> envs;
    for (int k = 0; k < n; ++k) {
        envs.push_back(make(c));
        ASSERT_TRUE(bitwise_equal(first[k], envs[k].reset(10 + k)));
    }
    std::vector<int> episode(n, 0);
    std::vector<bool> pending(n, false);
    for (int t = 0; t < 10; ++t) {
        std::vector<double> actions(n);
        for (int k = 0; k < n; ++k) actions[k] = (t + k) % 4;
        const auto& out = v.step(actions);
        for (int k = 0; k < n; ++k) {
            step_result expect;
            if (pending[k]) {
                ++episode[k];
                expect = envs[k].reset(10 + k + n * episode[k]);
                pending[k] = false;
            } else {
                expect = envs[k].step({actions[k]});
                pending[k] = expect.done();
            }
            ASSERT_TRUE(bitwise_equal(out[k], expect)) << "lane " << k << " t " << t;
        }
    }
}

TEST(VectorEngine, SerialAndParallelIdentical) {
    env_config c;
    c.task_id = "Battleship";
    vector_engine a(c, 16, 5, execution::serial);
    vector_engine b(c, 16, 5, execution::parallel, 4);
    a.reset();
    b.reset();
    for (int t = 0; t < 150; ++t) {
        std::vector<double> actions(16);
        for (int k = 0; k < 16; ++k) actions[k] = (t * 13 + k * 5) % 64;
        const auto& ra = a.step(actions);
        const auto& rb = b.step(actions);
        for (int k = 0; k < 16; ++k) ASSERT_TRUE(bitwise_equal(ra[k], rb[k]));
    }
}

TEST(VectorEngine, BadLaneActionNamesLaneAndLeavesStateUntouched) {
    env_config c;
    c.task_id = "RepeatFirst";
    vector_engine v(c, 3, 0);
    v.reset();
    try {
        v.step(std::vector<double>{0, 9, 0});
        FAIL();
    } catch (const lane_error& e) {
        EXPECT_EQ(e.lane(), 1);
        EXPECT_EQ(e.code(), errc::lane_action_shape);
    }
    EXPECT_EQ(v.lane(0).elapsed_steps(), 0);
    EXPECT_THROW(v.step(std::vector<double>{0, 0}), lane_error);
}
