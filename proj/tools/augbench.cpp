#include "augbench/errors.hpp"
#include "augbench/kernels.hpp"
#include "augbench/pipeline.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using namespace augbench;

namespace {

struct CliState {
    RunConfig cfg;
    std::string scheme_name = "none";
    std::string out_path;
    std::string in_path;
    std::string trace_path;
    int fold = 0;
    int threads = 0; // 0 = leave library default
};

void add_common_options(CLI::App* cmd, CliState& st) {
    cmd->set_config("--config", "", "flat key=value file; command-line flags win");
    cmd->add_option("--dataset-root", st.cfg.dataset_root, "dataset layout <root>/<class>/<file>");
    cmd->add_option("--seed", st.cfg.seed, "master seed for every random choice");
    cmd->add_option("--epochs", st.cfg.epochs, "training epochs")->check(CLI::NonNegativeNumber);
    cmd->add_option("--minibatch", st.cfg.minibatch)->check(CLI::PositiveNumber);
    cmd->add_option("--lr", st.cfg.learning_rate, "learning rate");
    cmd->add_option("--momentum", st.cfg.momentum);
    cmd->add_option("--l2", st.cfg.l2, "L2 weight decay");
    cmd->add_option("--exclude-class", st.cfg.excluded_classes,
                    "class directories to skip (default BACKGROUND_Google)");
    cmd->add_option("--max-classes", st.cfg.max_classes,
                    "keep only the first N classes lexicographically (0 = all)");
    cmd->add_option("--max-per-class", st.cfg.max_per_class,
                    "keep only the first M files per class (0 = all)");
    cmd->add_option("--jitter-hue", st.cfg.jitter_hue);
    cmd->add_option("--jitter-saturation", st.cfg.jitter_saturation);
    cmd->add_option("--jitter-brightness", st.cfg.jitter_brightness);
    cmd->add_option("--pca-scale", st.cfg.pca_scale, "fancy-PCA scale s_p");
    cmd->add_option("--model", st.cfg.model, "model preset: paper | tiny");
    cmd->add_option("--init", st.cfg.init, "weight init: xavier | gaussian");
    cmd->add_option("--threads", st.threads, "1 = serial kernels, N > 1 = OpenMP threads");
    cmd->add_flag("--timing,!--no-timing", st.cfg.timing,
                  "record wall_seconds (disable for byte-reproducible output)");
}

LabeledDataset ingest_with_log(const CliState& st) {
    IngestReport report;
    LabeledDataset ds = ingest(st.cfg.dataset_root, st.cfg.excluded_classes, &report,
                               st.cfg.max_classes, st.cfg.max_per_class);
    for (const auto& line : report.skipped) std::cerr << "skipped: " << line << "\n";
    return ds;
}

int cmd_standardize(const CliState& st) {
    const LabeledDataset ds = ingest_with_log(st);
    for (const auto& item : ds.items) {
        const fs::path rel(item.source_id);
        const fs::path out = fs::path(st.out_path) / rel.parent_path() / (rel.stem().string() + ".ppm");
        fs::create_directories(out.parent_path());
        save_image(item.image, out);
    }
    std::cout << "standardized " << ds.items.size() << " images into " << st.out_path << "\n";
    return 0;
}

int cmd_augment(const CliState& st) {
    const AugmentationScheme scheme = scheme_from_config(st.scheme_name, st.cfg);
    const LabeledDataset ds = ingest_with_log(st);

    const std::vector<LabeledImage> inflated = inflate(ds.items, scheme, st.cfg.seed);
    std::map<std::string, int> per_class;
    for (const auto& item : inflated) {
        const fs::path rel(item.source_id);
        const std::string cls = rel.parent_path().string();
        const std::string stem = rel.stem().string();
        const fs::path dir = fs::path(st.out_path) / cls;
        fs::create_directories(dir);
        const std::string name = item.provenance.augmented
                                     ? augmented_file_name(stem, scheme, item.provenance.variant)
                                     : stem + ".ppm";
        save_image(item.image, dir / name);
        ++per_class[cls];
    }
    for (const auto& [cls, count] : per_class) std::cout << cls << ": " << count << " files\n";
    std::cout << "total: " << inflated.size() << " files written\n";
    return 0;
}

int cmd_split(const CliState& st) {
    const LabeledDataset raw = ingest_with_log(st);
    const LabeledDataset ds = trim_to_multiple(raw, kFoldCount, st.cfg.seed);
    const FoldSplit split = make_folds(ds, st.cfg.seed);

    std::ofstream out(st.out_path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + st.out_path);
    out << fold_manifest_json(ds, split);
    std::cout << "fold manifest for " << ds.items.size() << " items written to " << st.out_path
              << "\n";
    return 0;
}

int cmd_train(const CliState& st) {
    const LabeledDataset raw = ingest_with_log(st);
    const LabeledDataset ds = trim_to_multiple(raw, kFoldCount, st.cfg.seed);
    const FoldSplit split = make_folds(ds, st.cfg.seed);
    const AugmentationScheme scheme = scheme_from_config(st.scheme_name, st.cfg);

    CnnModel model;
    TrainTrace trace;
    const FoldResult result = run_fold(st.cfg, ds, split, scheme, st.fold, &model, &trace);

    if (!st.out_path.empty()) {
        save_checkpoint(model, st.out_path);
        std::cout << "checkpoint written to " << st.out_path << "\n";
    }
    if (!st.trace_path.empty()) {
        std::ofstream out(st.trace_path, std::ios::trunc);
        if (!out) throw IoError("cannot write " + st.trace_path);
        out << trace_to_jsonl(trace);
    }
    std::cout << "fold " << result.fold_index << ": top1 " << result.top1 << ", top5 "
              << result.top5 << " on " << result.item_count << " validation items\n";
    return 0;
}

int cmd_benchmark(const CliState& st) {
    std::ofstream out(st.out_path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + st.out_path);
    run_benchmark(st.cfg, out, std::cerr);
    std::cout << "results written to " << st.out_path << "\n";
    return 0;
}

int cmd_report(const CliState& st) {
    std::ifstream in(st.in_path);
    if (!in) throw FileNotFoundError("no such results file: " + st.in_path);
    std::cout << render_report(in);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"image data augmentation benchmark"};
    app.require_subcommand(1);

    CliState st;

    auto* standardize = app.add_subcommand("standardize", "resize dataset images onto 256x256 canvases");
    add_common_options(standardize, st);
    standardize->add_option("--out", st.out_path, "output directory")->required();

    auto* augment = app.add_subcommand("augment", "materialize one augmentation scheme");
    add_common_options(augment, st);
    augment->add_option("--scheme", st.scheme_name, "none|flip|rotate|crop|jitter|edge|fancy_pca")
        ->required();
    augment->add_option("--out", st.out_path, "output directory")->required();

    auto* split = app.add_subcommand("split", "write the 4-fold manifest");
    add_common_options(split, st);
    split->add_option("--out", st.out_path, "manifest JSON path")->required();

    auto* train = app.add_subcommand("train", "train one fold with one scheme");
    add_common_options(train, st);
    train->add_option("--scheme", st.scheme_name)->required();
    train->add_option("--fold", st.fold, "validation fold index")->check(CLI::Range(0, 3));
    train->add_option("--out", st.out_path, "checkpoint path");
    train->add_option("--trace", st.trace_path, "loss trace JSON-lines path");

    auto* benchmark = app.add_subcommand("benchmark", "run schemes x folds and emit JSON lines");
    add_common_options(benchmark, st);
    benchmark->add_option("--schemes", st.cfg.schemes, "subset of schemes to run")
        ->delimiter(',');
    benchmark->add_option("--out", st.out_path, "results JSON-lines path")->required();

    auto* report = app.add_subcommand("report", "render a results file as a table");
    report->add_option("--in,in", st.in_path, "results JSON-lines path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (st.threads != 0) kern::set_thread_count(st.threads);
        if (standardize->parsed()) return cmd_standardize(st);
        if (augment->parsed()) return cmd_augment(st);
        if (split->parsed()) return cmd_split(st);
        if (train->parsed()) return cmd_train(st);
        if (benchmark->parsed()) return cmd_benchmark(st);
        if (report->parsed()) return cmd_report(st);
    } catch (const NumericalFailureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
