#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "commands.hpp"
#include "smfkit/number_format.hpp"
#include "run_descriptor.hpp"

namespace {

using smfkit::cli::CommonOptions;
using smfkit::cli::RunDescriptor;

struct SubcommandState {
    RunDescriptor desc;
    CommonOptions opts;
    std::string descriptor_path;
    std::string engines_csv = "classical,optimal";
};

void add_common_flags(CLI::App* cmd, SubcommandState& st) {
    cmd->add_option("--steps", st.desc.steps, "Horizon K; measurements k = 0..K");
    cmd->add_option("--runs", st.desc.runs, "Number of simulation runs");
    cmd->add_option("--samples", st.desc.samples, "Accepted samples per Monte Carlo step");
    cmd->add_option("--seed", st.desc.seed, "Base seed; run r uses a derived stream");
    cmd->add_option("--engines", st.engines_csv, "Comma list from {classical,optimal}");
    cmd->add_option("--out", st.opts.out_dir, "Output directory");
    cmd->add_option("--workers", st.opts.workers,
                    "Worker threads (0 = hardware); outputs do not depend on it");
    cmd->add_flag("--dump-samples", st.opts.dump_samples,
                  "Also write accepted Monte Carlo samples for run 0");
    cmd->add_option("--descriptor", st.descriptor_path,
                    "Load steps/runs/samples/seed/engines from a descriptor JSON");
}

std::vector<std::string> split_engines(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string tok = csv.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!tok.empty()) {
            out.push_back(tok);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

int finalize_descriptor(SubcommandState& st, const std::string& example) {
    st.desc.example = example;
    st.desc.engines = split_engines(st.engines_csv);
    if (!st.descriptor_path.empty()) {
        st.desc = RunDescriptor::from_json(smfkit::textio::read_file(st.descriptor_path));
        if (st.desc.example != example) {
            std::cerr << "descriptor is for example \"" << st.desc.example
                      << "\", not \"" << example << "\"\n";
            return smfkit::cli::kExitIo;
        }
    }
    st.desc.validate();
    return smfkit::cli::kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Set-membership filtering toolkit: bounded-noise estimation studies"};
    app.require_subcommand(1);

    SubcommandState a;
    a.desc.runs = 10000;
    CLI::App* cmd_a = app.add_subcommand(
        "example-a", "Scalar plant with related process and measurement noise");
    add_common_flags(cmd_a, a);

    SubcommandState b;
    b.desc.runs = 1;
    b.desc.seed = 4;
    CLI::App* cmd_b = app.add_subcommand(
        "example-b", "Linear plant with one shared process-noise realization");
    add_common_flags(cmd_b, b);

    int iterations = 1000;
    std::uint64_t lemma_seed = 1;
    CommonOptions lemma_opts;
    CLI::App* cmd_l =
        app.add_subcommand("lemma-check", "Randomized uncertain-variable identity suite");
    cmd_l->add_option("--iterations", iterations, "Randomized cases to run");
    cmd_l->add_option("--seed", lemma_seed, "Generator seed");
    cmd_l->add_option("--out", lemma_opts.out_dir, "Directory for failure dumps");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_a->parsed()) {
            if (const int rc = finalize_descriptor(a, "a"); rc != smfkit::cli::kExitOk) {
                return rc;
            }
            return smfkit::cli::run_example_a(a.desc, a.opts);
        }
        if (cmd_b->parsed()) {
            if (const int rc = finalize_descriptor(b, "b"); rc != smfkit::cli::kExitOk) {
                return rc;
            }
            return smfkit::cli::run_example_b(b.desc, b.opts);
        }
        if (cmd_l->parsed()) {
            return smfkit::cli::run_lemma_check(iterations, lemma_seed, lemma_opts);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return smfkit::cli::kExitIo;
    }
    return smfkit::cli::kExitOk;
}
