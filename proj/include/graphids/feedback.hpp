#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "graphids/errors.hpp"
#include "graphids/matrix.hpp"

namespace graphids {

enum class FeedbackKind { deterministic, erdos_renyi };

// Arms observed in one round. Always contains the chosen arm; sorted.
struct ObservationSet {
    int chosen = 0;
    std::vector<int> observed;
};

namespace detail {

inline void validate_adjacency(const Matrix& a) {
    const int k = a.size();
    if (k < 1) throw invalid_adjacency_error("adjacency: empty matrix");
    for (int i = 0; i < k; ++i) {
        if (a(i, i) != 1.0)
            throw invalid_adjacency_error("adjacency: diagonal entry (" + std::to_string(i + 1) +
                                          "," + std::to_string(i + 1) + ") must be 1");
        for (int j = 0; j < k; ++j) {
            const double v = a(i, j);
            if (v != 0.0 && v != 1.0)
                throw invalid_adjacency_error("adjacency: entry (" + std::to_string(i + 1) + "," +
                                              std::to_string(j + 1) + ") not in {0,1}");
        }
    }
}

} // namespace detail

// Feedback process: either a deterministic adjacency (possibly directed,
// row semantics: playing i reveals every j with A(i,j)=1) or Erdos-Renyi
// random side observations with per-round probability r_t. Time-invariant
// models hold a single entry reused for every round; time-variant schedules
// must cover each requested round.
class FeedbackModel {
  public:
    static FeedbackModel deterministic(Matrix adjacency) {
        detail::validate_adjacency(adjacency);
        FeedbackModel m;
        m.kind_ = FeedbackKind::deterministic;
        m.arms_ = adjacency.size();
        m.invariant_ = true;
        m.adjacency_.push_back(std::move(adjacency));
        return m;
    }

    static FeedbackModel deterministic_schedule(std::vector<Matrix> schedule) {
        if (schedule.empty()) throw invalid_adjacency_error("adjacency schedule: empty");
        for (const Matrix& a : schedule) {
            detail::validate_adjacency(a);
            if (a.size() != schedule.front().size())
                throw invalid_adjacency_error("adjacency schedule: inconsistent sizes");
        }
        FeedbackModel m;
        m.kind_ = FeedbackKind::deterministic;
        m.arms_ = schedule.front().size();
        m.invariant_ = false;
        m.adjacency_ = std::move(schedule);
        return m;
    }

    static FeedbackModel erdos_renyi(int arms, double r) {
        FeedbackModel m;
        m.kind_ = FeedbackKind::erdos_renyi;
        m.arms_ = arms;
        m.invariant_ = true;
        m.r_.push_back(check_r(r));
        return m;
    }

    static FeedbackModel erdos_renyi_schedule(int arms, std::vector<double> schedule) {
        if (schedule.empty()) throw error("r schedule: empty");
        for (double r : schedule) check_r(r);
        FeedbackModel m;
        m.kind_ = FeedbackKind::erdos_renyi;
        m.arms_ = arms;
        m.invariant_ = false;
        m.r_ = std::move(schedule);
        return m;
    }

    FeedbackKind kind() const { return kind_; }
    int arms() const { return arms_; }
    bool time_invariant() const { return invariant_; }

    // t is 1-based.
    const Matrix& adjacency_at(long long t) const { return adjacency_[index_at(t, adjacency_.size())]; }
    double r_at(long long t) const { return r_[index_at(t, r_.size())]; }

    // Entry (i,j): probability that playing i reveals j this round.
    Matrix effective_matrix(long long t) const {
        if (kind_ == FeedbackKind::deterministic) return adjacency_at(t);
        Matrix m(arms_, r_at(t));
        for (int i = 0; i < arms_; ++i) m(i, i) = 1.0;
        return m;
    }

    ObservationSet realize_observations(long long t, int chosen, std::mt19937_64& rng) const {
        ObservationSet out;
        out.chosen = chosen;
        if (kind_ == FeedbackKind::deterministic) {
            const Matrix& a = adjacency_at(t);
            for (int j = 0; j < arms_; ++j)
                if (a(chosen, j) == 1.0) out.observed.push_back(j);
            return out;
        }
        const double r = r_at(t);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int j = 0; j < arms_; ++j) {
            if (j == chosen) {
                out.observed.push_back(j);
            } else if (u(rng) < r) {
                out.observed.push_back(j);
            }
        }
        return out;
    }

  private:
    static double check_r(double r) {
        if (!(r >= 0.0 && r <= 1.0)) throw error("r must lie in [0,1]");
        return r;
    }

    std::size_t index_at(long long t, std::size_t len) const {
        if (t < 1) throw error("round index must be >= 1");
        if (invariant_) return 0;
        if (static_cast<std::size_t>(t) > len)
            throw schedule_exhausted_error("schedule exhausted at round " + std::to_string(t));
        return static_cast<std::size_t>(t - 1);
    }

    FeedbackKind kind_ = FeedbackKind::deterministic;
    int arms_ = 0;
    bool invariant_ = true;
    std::vector<Matrix> adjacency_;
    std::vector<double> r_;
};

// Text format: first line K, then K rows of K space-separated 0/1 entries.
inline Matrix load_adjacency(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open graph file: " + path.string());
    int k = 0;
    if (!(in >> k) || k < 1) throw parse_error(path.string() + ": bad arm count on line 1");
    Matrix a(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            int v = 0;
            if (!(in >> v))
                throw parse_error(path.string() + ": truncated adjacency row " + std::to_string(i + 1));
            if (v != 0 && v != 1)
                throw parse_error(path.string() + ": entry not in {0,1} on row " + std::to_string(i + 1));
            a(i, j) = v;
        }
    }
    detail::validate_adjacency(a);
    return a;
}

// Symmetric Erdos-Renyi draw with unit diagonal; edges sampled in row-major
// (i < j) order so the stream use is reproducible.
inline Matrix sample_er_adjacency(int arms, double p, std::mt19937_64& rng) {
    Matrix a = identity_matrix(arms);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < arms; ++i)
        for (int j = i + 1; j < arms; ++j)
            if (u(rng) < p) a(i, j) = a(j, i) = 1.0;
    return a;
}

} // namespace graphids
