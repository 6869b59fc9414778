#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "memsuite/core/environment.hpp"

namespace memsuite {

/// Minimal fork-join pool. `run(n, fn)` calls fn(i) for every i in [0, n) and
/// returns when all calls have finished.
class worker_pool {
public:
    explicit worker_pool(unsigned threads);
    worker_pool(const worker_pool&) = delete;
    worker_pool& operator=(const worker_pool&) = delete;
    ~worker_pool();

    void run(std::size_t n, const std::function<void(std::size_t)>& fn);
    [[nodiscard]] unsigned size() const noexcept { return static_cast<unsigned>(threads_.size()); }

private:
    void worker_loop();

    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    const std::function<void(std::size_t)>* job_ = nullptr;
    std::size_t job_size_ = 0;
    std::size_t next_ = 0;
    std::size_t finished_ = 0;
    std::uint64_t generation_ = 0;
    bool stop_ = false;
};

enum class execution { serial, parallel };

/// `n` independent lanes of one task configuration. Lane `k` runs episodes
/// seeded `base_seed + k + n * e` for e = 0, 1, ... A lane that finishes
/// returns its final result and is reset on the following call, whose result
/// is the new episode's t = 0 observation (the lane's action is ignored).
class vector_engine {
public:
    vector_engine(const env_config& config, std::size_t n, std::uint64_t base_seed,
                  execution exec = execution::serial, unsigned threads = 0);

    /// Resets every lane to episode 0 and returns the initial observations.
    const std::vector<step_result>& reset();
    /// `actions` holds n * action_width() values, lane-major.
    const std::vector<step_result>& step(std::span<const double> actions);

    [[nodiscard]] std::size_t size() const noexcept { return lanes_.size(); }
    [[nodiscard]] std::size_t action_width() const noexcept { return width_; }
    [[nodiscard]] const env_specs& specs() const noexcept { return lanes_.front().specs(); }
    [[nodiscard]] const environment& lane(std::size_t k) const { return lanes_.at(k); }
    [[nodiscard]] environment& lane(std::size_t k) { return lanes_.at(k); }
    [[nodiscard]] std::uint64_t lane_episode(std::size_t k) const { return episodes_.at(k); }
    [[nodiscard]] std::uint64_t lane_seed(std::size_t k, std::uint64_t episode) const noexcept {
        return base_seed_ + k + lanes_.size() * episode;
    }
    [[nodiscard]] const std::vector<step_result>& results() const noexcept { return results_; }

private:
    void for_each_lane(const std::function<void(std::size_t)>& fn);

    std::vector<environment> lanes_;
    std::vector<std::uint64_t> episodes_;
    std::vector<std::uint8_t> pending_reset_;
    std::vector<step_result> results_;
    std::uint64_t base_seed_;
    std::size_t width_;
    execution exec_;
    std::unique_ptr<worker_pool> pool_;
};

}  // namespace memsuite
