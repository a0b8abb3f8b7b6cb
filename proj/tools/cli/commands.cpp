#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <thread>
#include <variant>
#include <vector>

#include "smfkit/filter.hpp"
#include "smfkit/geometry_io.hpp"
#include "smfkit/grid_oracle.hpp"
#include "smfkit/lemma_suite.hpp"
#include "smfkit/mc_oracle.hpp"
#include "smfkit/number_format.hpp"
#include "smfkit/rng.hpp"
#include "smfkit/simulate.hpp"

namespace smfkit::cli {

namespace {

using textio::csv_line;
using textio::format_number;

// Runs per_run(r) for r in [0, runs) on a small pool. Work items land in
// caller-owned slots indexed by r, so aggregation order (and therefore
// every output byte) is independent of the worker count.
template <typename Fn>
void parallel_runs(int runs, int workers, Fn&& per_run) {
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
    }
    workers = std::max(1, std::min(workers, runs));

    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(runs));
    auto body = [&] {
        while (true) {
            const int r = next.fetch_add(1);
            if (r >= runs) {
                return;
            }
            try {
                per_run(r);
            } catch (...) {
                errors[static_cast<std::size_t>(r)] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back(body);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

std::string out_path(const CommonOptions& opts, const std::string& name) {
    return opts.out_dir + "/" + name;
}

void write_descriptor(const RunDescriptor& desc, const CommonOptions& opts) {
    textio::write_file(out_path(opts, "descriptor.json"), desc.to_json() + "\n");
}

geom::Interval as_interval(const smf::StateSet& s) { return std::get<geom::Interval>(s); }
geom::PolygonV as_polygon(const smf::StateSet& s) { return std::get<geom::PolygonV>(s); }

struct ExampleARun {
    std::vector<double> diam_classical;
    std::vector<double> diam_optimal;
    std::vector<int> violations_by_k;
    bool inconsistent = false;
};

} // namespace

int run_example_a(const RunDescriptor& desc, const CommonOptions& opts) {
    desc.validate();
    const smf::ScalarSystemModel model = smf::make_example_a_model();
    const int k_count = desc.steps + 1;
    const bool want_classical = desc.wants("classical");
    const bool want_optimal = desc.wants("optimal");

    std::vector<ExampleARun> results(static_cast<std::size_t>(desc.runs));
    try {
        parallel_runs(desc.runs, opts.workers, [&](int r) {
            const std::uint64_t run_seed =
                rng::derive_stream(desc.seed, static_cast<std::uint64_t>(r));
            const smf::ScalarTrajectory traj =
                smf::simulate_scalar(model, desc.steps, rng::derive_stream(run_seed, 0));

            ExampleARun& slot = results[static_cast<std::size_t>(r)];
            smf::FilterTrace classical;
            smf::FilterTrace optimal;
            if (want_classical) {
                classical = smf::run_filter(model, traj.measurements, smf::Engine::Classical);
                slot.inconsistent |= !classical.consistent();
                for (const auto& st : classical.steps) {
                    slot.diam_classical.push_back(as_interval(st.posterior).diameter());
                }
            }
            if (want_optimal) {
                oracle::McConfig cfg;
                cfg.samples = desc.samples;
                cfg.seed = rng::derive_stream(run_seed, 1);
                optimal = smf::run_filter(model, traj.measurements, smf::Engine::OptimalMc, &cfg);
                slot.inconsistent |= !optimal.consistent();
                for (const auto& st : optimal.steps) {
                    slot.diam_optimal.push_back(as_interval(st.posterior).diameter());
                }
            }
            if (want_classical && want_optimal) {
                slot.violations_by_k.assign(static_cast<std::size_t>(k_count), 0);
                for (std::size_t k = 0; k < classical.steps.size() && k < optimal.steps.size();
                     ++k) {
                    if (!smf::outer_bound_assert(optimal.steps[k].posterior,
                                                 classical.steps[k].posterior, 1e-9)) {
                        slot.violations_by_k[k] = 1;
                    }
                }
            }
        });
    } catch (const oracle::AcceptanceStarvation& e) {
        std::cerr << "example-a: " << e.what() << "\n";
        return kExitStarvation;
    }

    // Fixed-order aggregation.
    std::vector<double> sum_classical(static_cast<std::size_t>(k_count), 0.0);
    std::vector<double> sum_optimal(static_cast<std::size_t>(k_count), 0.0);
    std::vector<int> violations(static_cast<std::size_t>(k_count), 0);
    int total_violations = 0;
    bool any_inconsistent = false;
    for (const auto& run : results) {
        any_inconsistent |= run.inconsistent;
        for (std::size_t k = 0; k < run.diam_classical.size(); ++k) {
            sum_classical[k] += run.diam_classical[k];
        }
        for (std::size_t k = 0; k < run.diam_optimal.size(); ++k) {
            sum_optimal[k] += run.diam_optimal[k];
        }
        for (std::size_t k = 0; k < run.violations_by_k.size(); ++k) {
            violations[k] += run.violations_by_k[k];
            total_violations += run.violations_by_k[k];
        }
    }

    std::string csv = csv_line({"k", "avg_diam_classical", "avg_diam_optimal",
                                "containment_violations"});
    for (int k = 0; k < k_count; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        csv += csv_line({std::to_string(k),
                         want_classical
                             ? format_number(sum_classical[ks] / desc.runs)
                             : std::string(),
                         want_optimal ? format_number(sum_optimal[ks] / desc.runs)
                                      : std::string(),
                         want_classical && want_optimal
                             ? std::to_string(violations[ks])
                             : std::string()});
    }

    try {
        write_descriptor(desc, opts);
        textio::write_file(out_path(opts, "summary.csv"), csv);
        if (opts.dump_samples && want_optimal) {
            // Re-derive run 0's accepted samples; determinism makes this
            // identical to what the filter consumed.
            const std::uint64_t run_seed = rng::derive_stream(desc.seed, 0);
            const smf::ScalarTrajectory traj =
                smf::simulate_scalar(model, desc.steps, rng::derive_stream(run_seed, 0));
            std::string dump = csv_line({"k", "x", "w", "v"});
            geom::Interval posterior =
                smf::classical_update(model.initial_range, traj.measurements[0], model);
            const std::uint64_t mc_base = rng::derive_stream(run_seed, 1);
            for (int k = 1; k <= desc.steps && !posterior.is_empty(); ++k) {
                oracle::McConfig cfg;
                cfg.samples = desc.samples;
                cfg.seed = rng::derive_stream(mc_base, static_cast<std::uint64_t>(k));
                cfg.collect_samples = true;
                const oracle::McStepResult step = oracle::mc_posterior_step(
                    posterior, traj.measurements[static_cast<std::size_t>(k)], cfg, model);
                for (const auto& s : step.samples) {
                    dump += csv_line({std::to_string(k), format_number(s.x),
                                      format_number(s.w), format_number(s.v)});
                }
                posterior = step.hull;
            }
            textio::write_file(out_path(opts, "mc_samples.csv"), dump);
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "example-a: " << e.what() << "\n";
        return kExitIo;
    }

    if (total_violations > 0 || any_inconsistent) {
        std::cerr << "example-a: " << total_violations
                  << " containment violations detected\n";
        return kExitInvariantViolation;
    }
    std::cout << "example-a: " << desc.runs << " runs, horizon " << desc.steps
              << ", outputs in " << opts.out_dir << "\n";
    return kExitOk;
}

int run_example_b(const RunDescriptor& desc, const CommonOptions& opts) {
    desc.validate();
    const smf::LinearModel model = smf::make_example_b_model();
    const smf::AugmentedModel aug = smf::augment(model);
    const bool want_classical = desc.wants("classical");
    const bool want_optimal = desc.wants("optimal");

    struct RunOutcome {
        int empty_classical = -1;
        int empty_optimal = -1;
        int containment_violations = 0;
        int truth_violations = 0;
        smf::FilterTrace classical;
        smf::FilterTrace optimal;
        smf::LinearTrajectory traj;
    };
    std::vector<RunOutcome> results(static_cast<std::size_t>(desc.runs));

    parallel_runs(desc.runs, opts.workers, [&](int r) {
        const std::uint64_t run_seed =
            rng::derive_stream(desc.seed, static_cast<std::uint64_t>(r));
        RunOutcome& slot = results[static_cast<std::size_t>(r)];
        slot.traj = smf::simulate_linear_shared_noise(model, desc.steps,
                                                      rng::derive_stream(run_seed, 0));
        if (want_classical) {
            slot.classical = smf::run_filter(model, slot.traj.measurements);
            if (slot.classical.inconsistent_at) {
                slot.empty_classical = *slot.classical.inconsistent_at;
            }
        }
        if (want_optimal) {
            slot.optimal = smf::run_filter(aug, slot.traj.measurements);
            if (slot.optimal.inconsistent_at) {
                slot.empty_optimal = *slot.optimal.inconsistent_at;
            }
        }
        const std::size_t steps =
            std::min(slot.classical.steps.size(), slot.optimal.steps.size());
        for (std::size_t k = 0; want_classical && want_optimal && k < steps; ++k) {
            if (!smf::outer_bound_assert(slot.optimal.steps[k].posterior,
                                         slot.classical.steps[k].posterior, 1e-9)) {
                ++slot.containment_violations;
            }
        }
        for (std::size_t k = 0; k < slot.traj.states.size(); ++k) {
            const geom::Vec2 truth = slot.traj.states[k];
            if (want_classical && k < slot.classical.steps.size() &&
                !geom::contains_point(as_polygon(slot.classical.steps[k].posterior), truth,
                                      1e-9)) {
                ++slot.truth_violations;
            }
            if (want_optimal && k < slot.optimal.steps.size() &&
                !geom::contains_point(as_polygon(slot.optimal.steps[k].posterior), truth,
                                      1e-9)) {
                ++slot.truth_violations;
            }
        }
    });

    // Snapshot polygons and ratio for the illustrated run (run 0).
    const std::vector<int> snapshots = {10, 20};
    std::string trace_csv = csv_line({"k", "engine", "polygon_id", "diameter", "area"});
    std::string ratio_csv = csv_line({"k", "area_classical", "area_optimal", "ratio"});
    std::vector<std::pair<std::string, std::string>> polygon_files;

    const RunOutcome& illustrated = results.front();
    const auto emit_trace_rows = [&](const smf::FilterTrace& trace, const char* engine) {
        for (const auto& st : trace.steps) {
            const geom::PolygonV poly = as_polygon(st.posterior);
            trace_csv += csv_line({std::to_string(st.k), engine,
                                   "k" + std::to_string(st.k) + "_" + engine,
                                   format_number(geom::diameter(poly)),
                                   format_number(geom::area(poly))});
        }
    };
    if (want_classical) {
        emit_trace_rows(illustrated.classical, "classical");
    }
    if (want_optimal) {
        emit_trace_rows(illustrated.optimal, "optimal");
    }
    for (const int k : snapshots) {
        if (k > desc.steps) {
            continue;
        }
        const auto ks = static_cast<std::size_t>(k);
        geom::PolygonV cl_round;
        geom::PolygonV op_round;
        if (want_classical && ks < illustrated.classical.steps.size()) {
            const std::string name = "k" + std::to_string(k) + "_classical.json";
            const std::string json =
                geom::polygon_to_json(as_polygon(illustrated.classical.steps[ks].posterior));
            polygon_files.emplace_back(name, json + "\n");
            cl_round = geom::polygon_from_json(json);
        }
        if (want_optimal && ks < illustrated.optimal.steps.size()) {
            const std::string name = "k" + std::to_string(k) + "_optimal.json";
            const std::string json =
                geom::polygon_to_json(as_polygon(illustrated.optimal.steps[ks].posterior));
            polygon_files.emplace_back(name, json + "\n");
            op_round = geom::polygon_from_json(json);
        }
        if (!cl_round.is_empty() && !op_round.is_empty()) {
            // The ratio is computed from the polygons as emitted, so
            // recomputing it from the files reproduces it exactly.
            const double ca = geom::area(cl_round);
            const double oa = geom::area(op_round);
            ratio_csv += csv_line({std::to_string(k), format_number(ca), format_number(oa),
                                   format_number(ca > 0.0 ? oa / ca : 0.0)});
        }
    }

    std::string runs_csv = csv_line({"run", "empty_step_classical", "empty_step_optimal",
                                     "containment_violations", "truth_violations"});
    int total_violations = 0;
    for (int r = 0; r < desc.runs; ++r) {
        const RunOutcome& run = results[static_cast<std::size_t>(r)];
        runs_csv += csv_line({std::to_string(r), std::to_string(run.empty_classical),
                              std::to_string(run.empty_optimal),
                              std::to_string(run.containment_violations),
                              std::to_string(run.truth_violations)});
        total_violations += run.containment_violations + run.truth_violations;
    }

    try {
        write_descriptor(desc, opts);
        textio::write_file(out_path(opts, "trace.csv"), trace_csv);
        textio::write_file(out_path(opts, "area_ratio.csv"), ratio_csv);
        textio::write_file(out_path(opts, "runs.csv"), runs_csv);
        for (const auto& [name, content] : polygon_files) {
            textio::write_file(out_path(opts, name), content);
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "example-b: " << e.what() << "\n";
        return kExitIo;
    }

    if (total_violations > 0) {
        std::cerr << "example-b: " << total_violations << " invariant violations detected\n";
        return kExitInvariantViolation;
    }
    std::cout << "example-b: " << desc.runs << " run(s), horizon " << desc.steps
              << ", outputs in " << opts.out_dir << "\n";
    return kExitOk;
}

int run_lemma_check(int iterations, std::uint64_t seed, const CommonOptions& opts) {
    const uvar::LemmaReport report = uvar::run_lemma_suite(iterations, seed);
    std::cout << report.to_text();
    try {
        if (!report.failure_dumps.empty()) {
            for (std::size_t i = 0; i < report.failure_dumps.size(); ++i) {
                textio::write_file(out_path(opts, "failure_" + std::to_string(i) + ".json"),
                                   report.failure_dumps[i] + "\n");
            }
            std::cerr << "lemma-check: " << report.failure_dumps.size()
                      << " failing cases dumped to " << opts.out_dir << "\n";
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "lemma-check: " << e.what() << "\n";
        return kExitIo;
    }
    return report.all_passed() ? kExitOk : kExitInvariantViolation;
}

} // namespace smfkit::cli
