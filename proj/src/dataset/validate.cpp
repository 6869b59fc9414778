#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

#include "memsuite/core/error.hpp"
#include "memsuite/core/registry.hpp"
#include "memsuite/core/rng.hpp"
#include "memsuite/dataset/dataset.hpp"
#include "io.hpp"

namespace memsuite::dataset {

namespace {

template <class T>
bool same_bytes(const T* a, const T* b, std::size_t n) {
    return std::memcmp(a, b, n * sizeof(T)) == 0;
}

void check_structure(const header& h, const trajectory& t, int index, std::vector<violation>& out) {
    auto flag = [&](const char* kind, std::string detail) { out.push_back({index, kind, std::move(detail)}); };
    const auto n = static_cast<std::size_t>(t.length);
    if (n == 0) {
        flag("length", "empty trajectory");
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const bool last = i + 1 == n;
        if ((t.done[i] != 0) != last)
            flag("done-placement", "done=" + std::to_string(t.done[i]) + " at step " + std::to_string(i));
        if ((t.success[i] != 0) != last)
            flag("success-placement", "success=" + std::to_string(t.success[i]) + " at step " + std::to_string(i));
        if (t.done[i] > 1 || t.success[i] > 1) flag("flag-value", "flag byte other than 0/1 at step " + std::to_string(i));
        const double r = t.reward[i];
        if (!std::isfinite(r)) flag("reward-value", "non-finite reward at step " + std::to_string(i));
        else if (h.reward == reward_mode::sparse && r != 0.0 && r != 1.0)
            flag("reward-value", "sparse reward " + std::to_string(r) + " at step " + std::to_string(i));
    }
    for (float v : t.proprio)
        if (!std::isfinite(v)) {
            flag("proprio-value", "non-finite proprio");
            break;
        }
}

}  // namespace

std::string replay_mismatch(const header& h, const trajectory& t) {
    env_config c;
    c.task_id = h.task_id;
    c.mode = h.mode;
    c.obs_mode = observation_mode::rgb;
    c.reward = h.reward;
    environment env = make(c);
    const auto P = static_cast<std::size_t>(h.proprio_dim), A = static_cast<std::size_t>(h.action_dim);
    const std::size_t frame = 128 * 128 * 6;
    if (env.specs().action.flat_size() != A) return "action width differs from the environment";

    step_result r = env.reset(t.seed);
    if (r.info.prompt != t.prompt) return "prompt differs";
    std::vector<double> a(A);
    for (std::size_t i = 0; i < static_cast<std::size_t>(t.length); ++i) {
        const std::string at = " at step " + std::to_string(i);
        if (r.raster.size() != frame || !same_bytes(r.raster.data(), t.rgb.data() + i * frame, frame))
            return "rgb differs" + at;
        if (r.observation.size() < P || !same_bytes(r.observation.data(), t.proprio.data() + i * P, P))
            return "proprio differs" + at;
        if (r.done()) return "episode ended early" + at;
        std::copy_n(t.action.data() + i * A, A, a.begin());
        try {
            r = env.step(std::span<const double>(a));
        } catch (const error& e) {
            return std::string("stored action rejected") + at + ": " + e.what();
        }
        if (!same_bytes(&r.reward, &t.reward[i], 1)) return "reward differs" + at;
        if ((r.info.success ? 1 : 0) != t.success[i]) return "success differs" + at;
        if ((r.done() ? 1 : 0) != t.done[i]) return "done differs" + at;
    }
    return {};
}

validation_report validate(const std::string& path, double replay_fraction, std::uint64_t sample_seed) {
    reader rd(path);
    const header& h = rd.header();
    validation_report rep;
    rep.trajectories = rd.size();

    std::uint64_t expected_offset = 0;
    std::set<std::uint64_t> seeds;
    for (std::size_t i = 0; i < h.trajectories.size(); ++i) {
        const auto& e = h.trajectories[i];
        if (e.offset != expected_offset)
            rep.violations.push_back({static_cast<int>(i), "offset", "offset " + std::to_string(e.offset) +
                                                                         ", expected " + std::to_string(expected_offset)});
        expected_offset = e.offset + detail::trajectory_bytes(h.schema, e.length);
        if (!seeds.insert(e.seed).second)
            rep.violations.push_back({static_cast<int>(i), "duplicate-seed", std::to_string(e.seed)});
        if (e.seed < h.seed_first || e.seed > h.seed_last)
            rep.violations.push_back({static_cast<int>(i), "seed-range", std::to_string(e.seed)});
    }
    if (expected_offset != h.payload_bytes)
        rep.violations.push_back({-1, "payload-size", "trajectories span " + std::to_string(expected_offset) +
                                                          " bytes, header declares " + std::to_string(h.payload_bytes)});

    const std::size_t n = rd.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng pick(sample_seed, 7);
    pick.shuffle(order);
    const auto n_replay =
        std::min(n, static_cast<std::size_t>(std::ceil(std::clamp(replay_fraction, 0.0, 1.0) * static_cast<double>(n))));
    std::vector<std::uint8_t> replay(n, 0);
    for (std::size_t k = 0; k < n_replay; ++k) replay[order[k]] = 1;

    for (std::size_t i = 0; i < n; ++i) {
        const trajectory t = rd.read(i);
        const int idx = static_cast<int>(i);
        check_structure(h, t, idx, rep.violations);
        if (replay[i] && t.length > 0) {
            ++rep.replayed;
            const std::string diff = replay_mismatch(h, t);
            if (!diff.empty()) rep.violations.push_back({idx, "replay-mismatch", diff});
        }
    }
    return rep;
}

}  // namespace memsuite::dataset
