#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <unistd.h>

#include <memsuite/core/error.hpp>
#include <memsuite/dataset/dataset.hpp>

namespace fs = std::filesystem;
using namespace memsuite;

namespace {

class scratch_file {
public:
    explicit scratch_file(const std::string& name)
        : path_(fs::temp_directory_path() / ("memsuite_" + std::to_string(::getpid()) + "_" + name)) {}
    ~scratch_file() { fs::remove(path_); }
    [[nodiscard]] std::string str() const { return path_.string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

dataset::collect_options opts(const std::string& task, int n, std::uint64_t seed = 1) {
    dataset::collect_options o;
    o.task_id = task;
    o.n_traj = n;
    o.base_seed = seed;
    return o;
}

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return errc::bad_request;
}

bool has_kind(const dataset::validation_report& r, const std::string& kind) {
    for (const auto& v : r.violations)
        if (v.kind == kind) return true;
    return false;
}

}  // namespace

TEST(Dataset, CollectShapesAndFlags) {
    scratch_file f("shapes.mikd");
    const auto stats = dataset::collect(opts("RememberColor3", 4), f.str());
    EXPECT_EQ(stats.kept, 4);
    dataset::reader rd(f.str());
    const auto& h = rd.header();
    EXPECT_EQ(h.task_id, "RememberColor3");
    EXPECT_EQ(h.proprio_dim, 8);
    EXPECT_EQ(h.action_dim, 4);
    ASSERT_EQ(rd.size(), 4u);
    EXPECT_EQ(h.schema[0].shape, (std::vector<int>{128, 128, 6}));
    for (std::size_t i = 0; i < rd.size(); ++i) {
        const auto t = rd.read(i);
        const auto T = static_cast<std::size_t>(t.length);
        ASSERT_GT(T, 0u);
        EXPECT_EQ(t.rgb.size(), T * 128 * 128 * 6);
        EXPECT_EQ(t.proprio.size(), T * 8);
        EXPECT_EQ(t.action.size(), T * 4);
        EXPECT_EQ(t.reward.size(), T);
        EXPECT_EQ(t.success.back(), 1);
        EXPECT_EQ(t.done.back(), 1);
        for (std::size_t k = 0; k + 1 < T; ++k) EXPECT_EQ(t.done[k], 0);
    }
}

TEST(Dataset, RoundTripIsBitIdentical) {
    scratch_file a("rt_a.mikd"), b("rt_b.mikd");
    dataset::collect(opts("ShellGameTouch", 1), a.str());
    dataset::reader rd(a.str());
    std::vector<dataset::trajectory> trajs{rd.read(0)};
    dataset::write(b.str(), rd.header(), trajs);
    EXPECT_EQ(slurp(a.str()), slurp(b.str()));
    dataset::reader rd2(b.str());
    EXPECT_EQ(rd2.read(0), trajs[0]);
}

TEST(Dataset, CollectionIsDeterministic) {
    scratch_file a("det_a.mikd"), b("det_b.mikd");
    dataset::collect(opts("RotateLenientPos", 3, 11), a.str());
    dataset::collect(opts("RotateLenientPos", 3, 11), b.str());
    EXPECT_EQ(slurp(a.str()), slurp(b.str()));
    dataset::reader rd(a.str());
    EXPECT_EQ(rd.read(0).prompt.size(), 1u);
}

TEST(Dataset, ValidFileHasNoViolationsUnderFullReplay) {
    scratch_file f("valid.mikd");
    auto o = opts("InterceptGrabSlow", 5);
    o.reward = reward_mode::sparse;
    dataset::collect(o, f.str());
    const auto rep = dataset::validate(f.str(), 1.0);
    EXPECT_EQ(rep.trajectories, 5u);
    EXPECT_EQ(rep.replayed, 5u);
    for (const auto& v : rep.violations) ADD_FAILURE() << v.kind << ": " << v.detail;
    dataset::reader rd(f.str());
    double sum = 0;
    for (double r : rd.read(0).reward) sum += r;
    EXPECT_EQ(sum, 1.0);
}

TEST(Dataset, ReplaySampleSize) {
    scratch_file f("sample.mikd");
    dataset::collect(opts("RememberColor3", 21), f.str());
    EXPECT_EQ(dataset::validate(f.str(), 0.05).replayed, 2u);
    EXPECT_EQ(dataset::validate(f.str(), 0.0).replayed, 0u);
}

TEST(Dataset, CorruptMagic) {
    scratch_file f("magic.mikd");
    dataset::collect(opts("ShellGameTouch", 1), f.str());
    std::string bytes = slurp(f.str());
    bytes[0] = 'X';
    spit(f.str(), bytes);
    EXPECT_EQ(code_of([&] { dataset::reader rd(f.str()); }), errc::bad_magic);
    spit(f.str(), "MI");
    EXPECT_EQ(code_of([&] { dataset::validate(f.str()); }), errc::bad_magic);
}

TEST(Dataset, TruncatedPayload) {
    scratch_file f("trunc.mikd");
    dataset::collect(opts("ShellGameTouch", 2), f.str());
    const std::string bytes = slurp(f.str());
    spit(f.str(), bytes.substr(0, bytes.size() - 1));
    EXPECT_EQ(code_of([&] { dataset::validate(f.str()); }), errc::truncated_payload);
    spit(f.str(), bytes.substr(0, 20));
    EXPECT_EQ(code_of([&] { dataset::reader rd(f.str()); }), errc::truncated_payload);
}

TEST(Dataset, SchemaMismatch) {
    scratch_file f("schema.mikd");
    dataset::collect(opts("ShellGameTouch", 1), f.str());
    std::string bytes = slurp(f.str());
    const auto at = bytes.find("\"float32\"");
    ASSERT_NE(at, std::string::npos);
    bytes.replace(at, 9, "\"float16\"");
    spit(f.str(), bytes);
    EXPECT_EQ(code_of([&] { dataset::reader rd(f.str()); }), errc::schema_mismatch);

    bytes = slurp(f.str());
    bytes[4] = 9;  // version
    spit(f.str(), bytes);
    EXPECT_EQ(code_of([&] { dataset::reader rd(f.str()); }), errc::schema_mismatch);
}

TEST(Dataset, DoneFlagMidTrajectory) {
    scratch_file f("done.mikd");
    dataset::collect(opts("RememberColor3", 2), f.str());
    dataset::reader rd(f.str());
    std::vector<dataset::trajectory> trajs{rd.read(0), rd.read(1)};
    ASSERT_GT(trajs[1].length, 2);
    trajs[1].done[1] = 1;
    dataset::write(f.str(), rd.header(), trajs);
    const auto rep = dataset::validate(f.str(), 0.0);
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_EQ(rep.violations[0].kind, "done-placement");
    EXPECT_EQ(rep.violations[0].trajectory, 1);
}

TEST(Dataset, TamperedRewardFailsReplay) {
    scratch_file f("tamper.mikd");
    dataset::collect(opts("ShellGameTouch", 2), f.str());
    dataset::reader rd(f.str());
    std::vector<dataset::trajectory> trajs{rd.read(0), rd.read(1)};
    trajs[0].reward[0] += 1e-9;
    trajs[1].rgb[12345] ^= 1;
    dataset::write(f.str(), rd.header(), trajs);
    const auto rep = dataset::validate(f.str(), 1.0);
    ASSERT_EQ(rep.violations.size(), 2u);
    EXPECT_TRUE(has_kind(rep, "replay-mismatch"));
    EXPECT_NE(rep.violations[0].detail.find("reward"), std::string::npos);
    EXPECT_NE(rep.violations[1].detail.find("rgb"), std::string::npos);
}

TEST(Dataset, PreconditionErrors) {
    scratch_file f("pre.mikd");
    EXPECT_EQ(code_of([&] { dataset::collect(opts("PassiveTMaze", 1), f.str()); }), errc::oracle_unavailable);
    EXPECT_EQ(code_of([&] { dataset::collect(opts("ShellGameTouch", 0), f.str()); }), errc::bad_param);
}
