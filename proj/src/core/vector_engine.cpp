#include "memsuite/core/vector_engine.hpp"

#include "memsuite/core/error.hpp"
#include "memsuite/core/registry.hpp"

namespace memsuite {

worker_pool::worker_pool(unsigned threads) {
    if (threads == 0) threads = 1;
    threads_.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) threads_.emplace_back([this] { worker_loop(); });
}

worker_pool::~worker_pool() {
    {
        std::lock_guard lock(mu_);
        stop_ = true;
    }
    start_cv_.notify_all();
    for (auto& t : threads_) t.join();
}

void worker_pool::run(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    std::unique_lock lock(mu_);
    job_ = &fn;
    job_size_ = n;
    next_ = 0;
    finished_ = 0;
    ++generation_;
    start_cv_.notify_all();
    done_cv_.wait(lock, [&] { return finished_ == job_size_; });
    job_ = nullptr;
}

void worker_pool::worker_loop() {
    std::uint64_t seen = 0;
    std::unique_lock lock(mu_);
    for (;;) {
        start_cv_.wait(lock, [&] { return stop_ || (job_ != nullptr && generation_ != seen && next_ < job_size_); });
        if (stop_) return;
        seen = generation_;
        while (job_ != nullptr && next_ < job_size_) {
            const std::size_t i = next_++;
            const auto* fn = job_;
            lock.unlock();
            (*fn)(i);
            lock.lock();
            if (++finished_ == job_size_) done_cv_.notify_all();
        }
    }
}

vector_engine::vector_engine(const env_config& config, std::size_t n, std::uint64_t base_seed, execution exec,
                             unsigned threads)
    : base_seed_(base_seed), exec_(exec) {
    if (n == 0) throw error(errc::bad_param, "vector engine needs at least one lane");
    environment proto = make(config);
    width_ = proto.specs().action.flat_size();
    lanes_.reserve(n);
    for (std::size_t k = 0; k + 1 < n; ++k) lanes_.push_back(proto);
    lanes_.push_back(std::move(proto));
    episodes_.assign(n, 0);
    pending_reset_.assign(n, 1);
    results_.resize(n);
    if (exec_ == execution::parallel) {
        if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
        pool_ = std::make_unique<worker_pool>(threads);
    }
}

void vector_engine::for_each_lane(const std::function<void(std::size_t)>& fn) {
    if (pool_) {
        pool_->run(lanes_.size(), fn);
    } else {
        for (std::size_t k = 0; k < lanes_.size(); ++k) fn(k);
    }
}

const std::vector<step_result>& vector_engine::reset() {
    std::fill(episodes_.begin(), episodes_.end(), 0);
    for_each_lane([this](std::size_t k) {
        results_[k] = lanes_[k].reset(lane_seed(k, 0));
        pending_reset_[k] = 0;
    });
    return results_;
}

const std::vector<step_result>& vector_engine::step(std::span<const double> actions) {
    const std::size_t n = lanes_.size();
    if (actions.size() != n * width_) {
        const std::size_t lane = std::min(n - 1, actions.size() / width_);
        throw lane_error(lane, "expected " + std::to_string(n * width_) + " action values in total, got " +
                                   std::to_string(actions.size()));
    }
    // Validate every lane before stepping any, so a bad batch leaves all lanes untouched.
    for (std::size_t k = 0; k < n; ++k) {
        if (pending_reset_[k]) continue;
        try {
            lanes_[k].check_action(actions.subspan(k * width_, width_));
        } catch (const error& e) {
            throw lane_error(k, std::string(e.what()));
        }
    }
    for_each_lane([&](std::size_t k) {
        if (pending_reset_[k]) {
            results_[k] = lanes_[k].reset(lane_seed(k, episodes_[k]));
            pending_reset_[k] = 0;
            return;
        }
        results_[k] = lanes_[k].step(actions.subspan(k * width_, width_));
        if (results_[k].done()) {
            pending_reset_[k] = 1;
            ++episodes_[k];
        }
    });
    return results_;
}

}  // namespace memsuite
