#include "mmblock/mobility_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace mmblock {

namespace {
constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Per-run substream: documented seed-splitting so replications are
/// reproducible independently of scheduling.
std::uint64_t run_seed(std::uint64_t master, long run_id) {
    return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(run_id)));
}

struct Link {
    double ux, uy;   // unit direction from the UE
    double eff_len;  // effective sub-segment length from the UE
    double r;        // full link length
};

struct Interval {
    double start, end;
};

// Union of [t, t+dur) intervals given sorted starts.
std::vector<Interval> union_intervals(std::vector<Interval>& raw) {
    std::vector<Interval> out;
    if (raw.empty()) return out;
    std::sort(raw.begin(), raw.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    Interval cur = raw[0];
    for (size_t i = 1; i < raw.size(); ++i) {
        if (raw[i].start <= cur.end) {
            cur.end = std::max(cur.end, raw[i].end);
        } else {
            out.push_back(cur);
            cur = raw[i];
        }
    }
    out.push_back(cur);
    return out;
}

struct Blocker {
    double x, y;
    double vx = 0, vy = 0;
    double leg_end = 0;  // absolute time the current leg ends
};

struct AllBlockedStats {
    double blocked_time = 0;
    long entries = 0;
};

// Sweep the per-link blocked interval unions and accumulate the time the
// counter equals n_links inside [w0, w1].
AllBlockedStats intersect_stats(const std::vector<std::vector<Interval>>& per_link,
                                double w0, double w1,
                                std::vector<TraceEvent>* trace) {
    AllBlockedStats st;
    const int n = static_cast<int>(per_link.size());
    struct Ev {
        double t;
        int delta;
    };
    std::vector<Ev> evs;
    for (const auto& link : per_link)
        for (const auto& iv : link) {
            evs.push_back({iv.start, +1});
            evs.push_back({iv.end, -1});
        }
    std::sort(evs.begin(), evs.end(), [](const Ev& a, const Ev& b) {
        return a.t < b.t || (a.t == b.t && a.delta > b.delta);
    });
    int counter = 0;
    double entered = -1;
    for (const auto& ev : evs) {
        if (counter == n && entered >= 0 && ev.t > entered) {
            const double s = std::max(entered, w0), e = std::min(ev.t, w1);
            if (e > s) st.blocked_time += e - s;
        }
        counter += ev.delta;
        if (counter == n && ev.delta > 0) {
            entered = ev.t;
            if (ev.t >= w0 && ev.t < w1) ++st.entries;
            if (trace) trace->push_back({ev.t, -1, true});
        } else if (counter == n - 1 && ev.delta < 0 && entered >= 0) {
            if (trace) trace->push_back({ev.t, -1, false});
        }
    }
    return st;
}

PerRunStats simulate_run(const SystemParams& params, const DerivedConstants& c,
                         const SimConfig& cfg, long run_id,
                         std::vector<TraceEvent>* trace) {
    PerRunStats st;
    st.run_id = run_id;
    st.seed = run_seed(cfg.rng_seed, run_id);
    std::mt19937_64 rng(st.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    const double R = params.los_range_R;
    const double L = cfg.arena_side;
    const double T = cfg.run_duration;
    const double w0 = cfg.warmup, w1 = T;
    const double window = w1 - w0;

    // BS deployment and self-blockage sector.
    std::vector<Link> links;
    if (cfg.fixed_single_link_r) {
        const double r = *cfg.fixed_single_link_r;
        const double th = cfg.fixed_single_link_theta;
        links.push_back({std::cos(th), std::sin(th), c.eff_fraction * r, r});
    } else {
        std::poisson_distribution<int> nbs(params.bs_density_lambda_T * kPi * R * R);
        const int m = nbs(rng);
        const double sector_start = unif(rng) * 2 * kPi;
        const double omega = params.self_block_angle_omega;
        for (int i = 0; i < m; ++i) {
            const double r = R * std::sqrt(unif(rng));
            const double th = unif(rng) * 2 * kPi;
            double rel = std::fmod(th - sector_start, 2 * kPi);
            if (rel < 0) rel += 2 * kPi;
            if (rel <= omega) continue;  // self-blocked
            links.push_back({std::cos(th), std::sin(th), c.eff_fraction * r, r});
        }
    }
    st.num_bs_in_coverage = static_cast<int>(links.size());

    // Blockers uniform in the square, density lambda_B.
    std::poisson_distribution<int> nbl(params.blocker_density_lambda_B * L * L);
    const int num_blockers = nbl(rng);
    std::vector<Blocker> blockers(static_cast<size_t>(num_blockers));
    for (auto& b : blockers) {
        b.x = (unif(rng) - 0.5) * L;
        b.y = (unif(rng) - 0.5) * L;
    }

    const double V = params.blocker_speed_V;
    const double half = L / 2.0;

    if (cfg.blockage_mode == BlockageMode::kExponentialMark) {
        // Exact crossing times on piecewise-linear trajectories.
        std::vector<std::vector<double>> crossings(links.size());
        long total_crossings_in_window = 0;
        for (auto& b : blockers) {
            double t = 0.0;
            while (t < T) {
                const double heading = unif(rng) * 2 * kPi;
                const double leg_time =
                    cfg.move_time_min +
                    unif(rng) * (cfg.move_time_max - cfg.move_time_min);
                b.vx = V * std::cos(heading);
                b.vy = V * std::sin(heading);
                double leg_end = std::min(t + leg_time, T);
                while (t < leg_end) {
                    // Earliest wall hit along the current velocity.
                    double t_hit = leg_end;
                    int wall = 0;  // 1: x, 2: y
                    if (b.vx > 0) {
                        const double th = t + (half - b.x) / b.vx;
                        if (th < t_hit) { t_hit = th; wall = 1; }
                    } else if (b.vx < 0) {
                        const double th = t + (-half - b.x) / b.vx;
                        if (th < t_hit) { t_hit = th; wall = 1; }
                    }
                    if (b.vy > 0) {
                        const double th = t + (half - b.y) / b.vy;
                        if (th < t_hit) { t_hit = th; wall = 2; }
                    } else if (b.vy < 0) {
                        const double th = t + (-half - b.y) / b.vy;
                        if (th < t_hit) { t_hit = th; wall = 2; }
                    }
                    const double t1 = std::max(t_hit, t);
                    // Crossings of every effective sub-segment on [t, t1].
                    const double x1 = b.x + b.vx * (t1 - t);
                    const double y1 = b.y + b.vy * (t1 - t);
                    for (size_t li = 0; li < links.size(); ++li) {
                        const Link& lk = links[li];
                        const double s0 = -lk.uy * b.x + lk.ux * b.y;
                        const double s1 = -lk.uy * x1 + lk.ux * y1;
                        if (!((s0 > 0 && s1 < 0) || (s0 < 0 && s1 > 0))) continue;
                        const double f = s0 / (s0 - s1);
                        const double tc = t + f * (t1 - t);
                        const double px = b.x + b.vx * (tc - t);
                        const double py = b.y + b.vy * (tc - t);
                        const double proj = lk.ux * px + lk.uy * py;
                        if (proj >= 0.0 && proj <= lk.eff_len) {
                            crossings[li].push_back(tc);
                            if (tc >= w0 && tc < w1) ++total_crossings_in_window;
                        }
                    }
                    b.x = x1;
                    b.y = y1;
                    t = t1;
                    if (wall == 1) b.vx = -b.vx;
                    else if (wall == 2) b.vy = -b.vy;
                }
            }
        }
        st.crossing_rate = total_crossings_in_window / window;

        if (!links.empty()) {
            // Exponential marks, drawn in (link, time) order for determinism.
            std::exponential_distribution<double> exp_mu(c.mu);
            std::vector<std::vector<Interval>> per_link(links.size());
            bool any_empty = false;
            for (size_t li = 0; li < links.size(); ++li) {
                std::sort(crossings[li].begin(), crossings[li].end());
                std::vector<Interval> raw;
                raw.reserve(crossings[li].size());
                for (double tc : crossings[li])
                    raw.push_back({tc, tc + exp_mu(rng)});
                per_link[li] = union_intervals(raw);
                if (per_link[li].empty()) any_empty = true;
                if (trace)
                    for (const auto& iv : per_link[li]) {
                        trace->push_back({iv.start, static_cast<int>(li), true});
                        trace->push_back({iv.end, static_cast<int>(li), false});
                    }
            }
            if (!any_empty) {
                const AllBlockedStats ab =
                    intersect_stats(per_link, w0, w1, trace);
                st.blocked_fraction = ab.blocked_time / window;
                st.num_events = ab.entries;
                st.event_rate = ab.entries / window;
                if (ab.entries > 0)
                    st.mean_event_duration = ab.blocked_time / ab.entries;
            }
        }
    } else {
        // Geometric-disc mode: fixed stepping, disc-segment intersection.
        const double radius = cfg.blocker_diameter_wB / 2.0;
        const double dt = cfg.time_step;
        std::vector<char> blocked(links.size(), 0);
        std::vector<long> onsets(links.size(), 0);
        int n = static_cast<int>(links.size());
        bool all_blocked = false;
        double entered = 0;
        for (double t = 0; t < T; t += dt) {
            for (auto& b : blockers) {
                if (t >= b.leg_end) {
                    const double heading = unif(rng) * 2 * kPi;
                    const double leg_time =
                        cfg.move_time_min +
                        unif(rng) * (cfg.move_time_max - cfg.move_time_min);
                    b.vx = V * std::cos(heading);
                    b.vy = V * std::sin(heading);
                    b.leg_end = t + leg_time;
                }
                b.x += b.vx * dt;
                b.y += b.vy * dt;
                if (b.x > half) { b.x = 2 * half - b.x; b.vx = -b.vx; }
                if (b.x < -half) { b.x = -2 * half - b.x; b.vx = -b.vx; }
                if (b.y > half) { b.y = 2 * half - b.y; b.vy = -b.vy; }
                if (b.y < -half) { b.y = -2 * half - b.y; b.vy = -b.vy; }
            }
            int count = 0;
            for (size_t li = 0; li < links.size(); ++li) {
                const Link& lk = links[li];
                bool is_blocked = false;
                for (const auto& b : blockers) {
                    const double proj =
                        std::clamp(lk.ux * b.x + lk.uy * b.y, 0.0, lk.eff_len);
                    const double dx = b.x - proj * lk.ux;
                    const double dy = b.y - proj * lk.uy;
                    if (dx * dx + dy * dy <= radius * radius) {
                        is_blocked = true;
                        break;
                    }
                }
                if (is_blocked && !blocked[li] && t >= w0) ++onsets[li];
                blocked[li] = is_blocked;
                if (is_blocked) ++count;
            }
            const bool now_all = n > 0 && count == n;
            if (now_all && t >= w0) st.blocked_fraction += dt;
            if (now_all && !all_blocked) {
                entered = t;
                if (t >= w0) ++st.num_events;
            }
            if (!now_all && all_blocked && entered >= w0)
                st.mean_event_duration += t - entered;
            all_blocked = now_all;
        }
        st.blocked_fraction /= window;
        st.event_rate = st.num_events / window;
        if (st.num_events > 0) st.mean_event_duration /= st.num_events;
        long total_onsets = 0;
        for (long o : onsets) total_onsets += o;
        st.crossing_rate = total_onsets / window;
    }
    return st;
}

SimEstimate summarize(const std::vector<double>& samples, const char* name,
                      std::uint64_t seed) {
    SimEstimate est;
    est.statistic = name;
    est.seed = seed;
    est.num_runs = static_cast<long>(samples.size());
    if (samples.empty()) return est;
    double sum = 0;
    for (double s : samples) sum += s;
    est.point_estimate = sum / samples.size();
    double ss = 0;
    for (double s : samples) {
        const double d = s - est.point_estimate;
        ss += d * d;
    }
    if (samples.size() > 1) {
        est.std_dev = std::sqrt(ss / (samples.size() - 1));
        est.std_error = est.std_dev / std::sqrt(double(samples.size()));
    }
    return est;
}

}  // namespace

SimResult run_open_park_sim(const SystemParams& params, const SimConfig& cfg,
                            bool trace) {
    params.validate();
    if (params.static_density_lambda_S != 0.0)
        throw std::invalid_argument(
            "run_open_park_sim requires lambda_S = 0 (open park)");
    if (cfg.arena_side < 2 * params.los_range_R)
        throw std::invalid_argument(
            "arena_side must be >= 2R so the disc fits in the square");
    if (cfg.num_runs < 1 || cfg.run_duration <= cfg.warmup)
        throw std::invalid_argument("invalid run count or duration");
    const DerivedConstants c = derive(params);

    SimResult result;
    result.runs.resize(static_cast<size_t>(cfg.num_runs));
    const int threads = std::max(1, cfg.threads);
    auto worker = [&](int tid) {
        for (long i = tid; i < cfg.num_runs; i += threads) {
            std::vector<TraceEvent>* tr =
                (trace && i == 0) ? &result.trace : nullptr;
            result.runs[static_cast<size_t>(i)] =
                simulate_run(params, c, cfg, i, tr);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::vector<double> probs, freqs, durs;
    for (const auto& r : result.runs) {
        if (r.num_bs_in_coverage == 0) continue;
        probs.push_back(r.blocked_fraction);
        freqs.push_back(r.event_rate);
        if (r.num_events > 0) durs.push_back(r.mean_event_duration);
    }
    result.block_prob = summarize(probs, "block_prob_cond", cfg.rng_seed);
    result.frequency = summarize(freqs, "frequency", cfg.rng_seed);
    result.duration = summarize(durs, "duration", cfg.rng_seed);
    if (trace)
        std::sort(result.trace.begin(), result.trace.end(),
                  [](const TraceEvent& a, const TraceEvent& b) {
                      return a.time < b.time;
                  });
    return result;
}

SimEstimate run_sampling_oracle(const SystemParams& params, long samples,
                                OracleModel model, std::uint64_t seed) {
    params.validate();
    const DerivedConstants c = derive(params);
    std::mt19937_64 rng(splitmix64(seed));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::poisson_distribution<int> nbs(params.bs_density_lambda_T * kPi *
                                       c.R * c.R);
    std::poisson_distribution<int> npaths(c.kappa);
    long blocked_count = 0;
    for (long s = 0; s < samples; ++s) {
        const int m = nbs(rng);
        bool all_blocked = true;
        for (int i = 0; i < m && all_blocked; ++i) {
            const double r = c.R * std::sqrt(unif(rng));
            const double los_keep = c.p * std::exp(-(c.beta * r + c.beta0)) /
                                    (1.0 + c.C * r / c.mu);
            bool bs_blocked = unif(rng) >= los_keep;
            if (model == OracleModel::kNlos && bs_blocked && r <= c.R_tilde) {
                const int k = std::max(npaths(rng), 1);
                const double keep = 1.0 / (1.0 + c.C * r / c.mu);
                for (int j = 0; j < k && bs_blocked; ++j)
                    if (unif(rng) < keep) bs_blocked = false;
            }
            if (!bs_blocked) all_blocked = false;
        }
        if (all_blocked) ++blocked_count;
    }
    SimEstimate est;
    est.statistic = model == OracleModel::kLos ? "uncond_los" : "uncond_nlos";
    est.seed = seed;
    est.num_runs = samples;
    est.point_estimate = static_cast<double>(blocked_count) / samples;
    est.std_error = std::sqrt(est.point_estimate * (1.0 - est.point_estimate) /
                              samples);
    est.std_dev = est.std_error * std::sqrt(double(samples));
    return est;
}

}  // namespace mmblock
