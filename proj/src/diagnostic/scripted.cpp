#include "memsuite/diagnostic/scripted.hpp"

#include <algorithm>

#include "memsuite/core/error.hpp"
#include "memsuite/diagnostic/tasks.hpp"

namespace memsuite::diagnostic {

namespace {

int hot_index(const std::vector<float>& obs, std::size_t begin, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i)
        if (obs[begin + i] > 0.5f) return static_cast<int>(i);
    return -1;
}

class memory_length_player final : public scripted_player {
public:
    void reset() override { bits_.clear(); }
    std::vector<double> act(const std::vector<float>& obs) override {
        if (obs[2] > 0.5f) bits_.assign(obs.begin() + 3, obs.end());
        const auto q = static_cast<std::size_t>(obs[1]);
        return {q < bits_.size() && bits_[q] > 0 ? 1.0 : 0.0};
    }

private:
    std::vector<float> bits_;
};

class count_recall_player final : public scripted_player {
public:
    explicit count_recall_player(int values) : values_(values) {}
    void reset() override { counts_.assign(values_, 0); }
    std::vector<double> act(const std::vector<float>& obs) override {
        const int next = hot_index(obs, 0, values_);
        const int query = hot_index(obs, values_, values_);
        const double answer = counts_[query];
        ++counts_[next];
        return {answer};
    }

private:
    int values_;
    std::vector<int> counts_;
};

class repeat_previous_player final : public scripted_player {
public:
    explicit repeat_previous_player(int k) : k_(k) {}
    void reset() override { seen_.clear(); }
    std::vector<double> act(const std::vector<float>& obs) override {
        seen_.push_back(hot_index(obs, 0, 4));
        const auto n = static_cast<int>(seen_.size());
        return {n > k_ ? static_cast<double>(seen_[n - 1 - k_]) : 0.0};
    }

private:
    int k_;
    std::vector<int> seen_;
};

class battleship_player final : public scripted_player {
public:
    void reset() override { next_ = 0; }
    std::vector<double> act(const std::vector<float>&) override { return {static_cast<double>(next_++)}; }

private:
    int next_ = 0;
};

}  // namespace

std::unique_ptr<scripted_player> make_scripted_player(const task_meta& meta, const task_params& params) {
    std::unique_ptr<scripted_player> p;
    if (meta.group == "MemoryLength") p = std::make_unique<memory_length_player>();
    if (meta.group == "CountRecall") p = std::make_unique<count_recall_player>(count_recall::parse(params).values);
    if (meta.group == "RepeatPrevious") p = std::make_unique<repeat_previous_player>(repeat_previous::parse(params).k);
    if (meta.group == "Battleship") p = std::make_unique<battleship_player>();
    if (!p) throw error(errc::oracle_unavailable, "no scripted player for " + meta.task_id);
    p->reset();
    return p;
}

double analytic_max_return(const task_meta& meta) {
    if (meta.group == "MemoryLength" || meta.group == "CountRecall" || meta.group == "RepeatPrevious" ||
        meta.group == "Battleship")
        return 1.0;
    throw error(errc::oracle_unavailable, "no analytic maximum for " + meta.task_id);
}

}  // namespace memsuite::diagnostic
