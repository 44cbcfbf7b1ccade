#include "augbench/pipeline.hpp"

#include "augbench/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace augbench {

AugmentationScheme scheme_from_config(const std::string& name, const RunConfig& config) {
    AugmentationScheme scheme = AugmentationScheme::parse(name);
    scheme.jitter = JitterParams::deltas(config.jitter_hue, config.jitter_saturation,
                                         config.jitter_brightness);
    scheme.pca_scale = config.pca_scale;
    return scheme;
}

int model_input_res(const RunConfig& config) { return config.model == "tiny" ? 16 : 224; }

std::vector<LayerSpec> architecture_from_config(const RunConfig& config) {
    if (config.model == "tiny") return tiny_architecture();
    if (config.model == "paper") return reference_architecture();
    throw ParseError("unknown model preset '" + config.model + "'");
}

FoldResult run_fold(const RunConfig& config, const LabeledDataset& ds, const FoldSplit& split,
                    const AugmentationScheme& scheme, int fold, CnnModel* trained_out,
                    TrainTrace* trace_out) {
    const std::uint64_t scheme_tag = static_cast<std::uint64_t>(scheme.kind);

    std::vector<LabeledImage> training;
    std::vector<const LabeledImage*> validation;
    for (std::size_t i = 0; i < ds.items.size(); ++i) {
        if (split.assignments[i] == fold)
            validation.push_back(&ds.items[i]);
        else
            training.push_back(ds.items[i]);
    }

    const std::vector<LabeledImage> inflated =
        inflate(training, scheme, derive_seed(config.seed, {rng_salt::inflate, scheme_tag,
                                                            static_cast<std::uint64_t>(fold)}));

    const int res = model_input_res(config);
    Rng init_rng(derive_seed(config.seed,
                             {rng_salt::init, scheme_tag, static_cast<std::uint64_t>(fold)}));
    CnnModel model = build_model({3, res, res}, static_cast<int>(ds.classes.size()),
                                 architecture_from_config(config),
                                 config.init == "gaussian" ? InitScheme::Gaussian
                                                           : InitScheme::Xavier,
                                 init_rng);

    std::vector<TrainItem> train_items;
    train_items.reserve(inflated.size());
    for (const auto& item : inflated) train_items.push_back(TrainItem{&item.image, item.label});

    TrainOptions opts;
    opts.epochs = config.epochs;
    opts.minibatch = config.minibatch;
    opts.learning_rate = config.learning_rate;
    opts.momentum = config.momentum;
    opts.l2 = config.l2;
    opts.grad_norm_clip = config.grad_norm_clip;
    opts.clip_norm = config.clip_norm;
    opts.seed =
        derive_seed(config.seed, {rng_salt::train, scheme_tag, static_cast<std::uint64_t>(fold)});
    TrainTrace trace = train(model, train_items, opts);
    if (trace_out) *trace_out = std::move(trace);

    // validation on uncropped standardized images, center-cropped at input assembly
    std::vector<std::vector<double>> probs;
    std::vector<int> labels;
    probs.reserve(validation.size());
    for (const auto* item : validation) {
        const Tensor p = forward(model, assemble_input(item->image, res), nullptr);
        probs.push_back(p.data);
        labels.push_back(item->label);
    }

    FoldResult result;
    result.fold_index = fold;
    result.item_count = static_cast<int>(validation.size());
    result.top1 = top_k_accuracy(probs, labels, 1);
    result.top5 = top_k_accuracy(probs, labels, std::min(5, static_cast<int>(ds.classes.size())));
    if (trained_out) *trained_out = std::move(model);
    return result;
}

std::vector<BenchmarkReport> run_benchmark(const RunConfig& config, std::ostream& results_jsonl,
                                           std::ostream& log) {
    IngestReport ingest_report;
    LabeledDataset raw = ingest(config.dataset_root, config.excluded_classes, &ingest_report,
                                config.max_classes, config.max_per_class);
    for (const auto& line : ingest_report.skipped) log << "skipped: " << line << "\n";

    LabeledDataset ds = trim_to_multiple(raw, kFoldCount, config.seed);
    const FoldSplit split = make_folds(ds, config.seed);
    log << "dataset: " << ds.classes.size() << " classes, " << ds.items.size()
        << " items after trimming\n";

    std::vector<BenchmarkReport> reports;
    for (const std::string& name : config.schemes) {
        try {
            const AugmentationScheme scheme = scheme_from_config(name, config);
            std::vector<FoldResult> folds;
            for (int fold = 0; fold < kFoldCount; ++fold) {
                const auto t0 = std::chrono::steady_clock::now();
                FoldResult result = run_fold(config, ds, split, scheme, fold);
                const double secs =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

                nlohmann::ordered_json line;
                line["scheme"] = name;
                line["fold"] = fold;
                line["top1"] = result.top1;
                line["top5"] = result.top5;
                line["items"] = result.item_count;
                line["wall_seconds"] = config.timing ? std::round(secs * 1000.0) / 1000.0 : 0.0;
                results_jsonl << line.dump() << "\n" << std::flush;
                log << name << " fold " << fold << ": top1 " << result.top1 << ", top5 "
                    << result.top5 << "\n";
                folds.push_back(result);
            }
            reports.push_back(aggregate(name, folds));
            log << name << ": top1 " << format_accuracy(reports.back().top1_mean,
                                                        reports.back().top1_std)
                << ", top5 " << format_accuracy(reports.back().top5_mean, reports.back().top5_std)
                << "\n";
        } catch (const Error& e) {
            nlohmann::ordered_json line;
            line["scheme"] = name;
            line["failed"] = true;
            line["error"] = e.what();
            results_jsonl << line.dump() << "\n" << std::flush;
            log << name << " failed: " << e.what() << "\n";
        }
    }
    return reports;
}

namespace {

const std::vector<std::string> kGeometric = {"flip", "rotate", "crop"};
const std::vector<std::string> kPhotometric = {"jitter", "edge", "fancy_pca"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

} // namespace

std::string render_report(std::istream& results_jsonl) {
    struct SchemeRows {
        std::vector<FoldResult> folds;
        std::string error;
    };
    std::map<std::string, SchemeRows> by_scheme;
    std::vector<std::string> order;

    std::string text;
    int lineno = 0;
    while (std::getline(results_jsonl, text)) {
        ++lineno;
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json line;
        try {
            line = nlohmann::json::parse(text);
            const std::string scheme = line.at("scheme").get<std::string>();
            if (!by_scheme.count(scheme)) order.push_back(scheme);
            auto& rows = by_scheme[scheme];
            if (line.value("failed", false)) {
                rows.error = line.value("error", "unknown failure");
            } else {
                FoldResult f;
                f.fold_index = line.at("fold").get<int>();
                f.top1 = line.at("top1").get<double>();
                f.top5 = line.at("top5").get<double>();
                f.item_count = line.at("items").get<int>();
                rows.folds.push_back(f);
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }

    if (order.empty()) return "no results\n";

    // canonical scheme order first, stragglers keep file order
    std::vector<std::string> sorted;
    for (const auto& name : AugmentationScheme::all_names())
        if (by_scheme.count(name)) sorted.push_back(name);
    for (const auto& name : order)
        if (!contains(sorted, name)) sorted.push_back(name);

    struct Row {
        std::string scheme, top1, top5;
        double top1_mean = -1.0, top5_mean = -1.0;
    };
    std::vector<Row> rows;
    for (const auto& name : sorted) {
        const auto& data = by_scheme.at(name);
        Row row;
        row.scheme = name;
        if (!data.error.empty() && data.folds.empty()) {
            row.top1 = "FAILED: " + data.error;
            row.top5 = "";
        } else if (data.folds.size() < 2) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2f ± n/a", data.folds[0].top1 * 100.0);
            row.top1 = buf;
            std::snprintf(buf, sizeof(buf), "%.2f ± n/a", data.folds[0].top5 * 100.0);
            row.top5 = buf;
            row.top1_mean = data.folds[0].top1;
            row.top5_mean = data.folds[0].top5;
        } else {
            const BenchmarkReport report = aggregate(name, data.folds);
            row.top1 = format_accuracy(report.top1_mean, report.top1_std);
            row.top5 = format_accuracy(report.top5_mean, report.top5_std);
            row.top1_mean = report.top1_mean;
            row.top5_mean = report.top5_mean;
        }
        rows.push_back(row);
    }

    // star the best Top-1/Top-5 inside each transform category
    auto mark_best = [&](const std::vector<std::string>& category, bool top1) {
        int best = -1;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!contains(category, rows[i].scheme)) continue;
            const double v = top1 ? rows[i].top1_mean : rows[i].top5_mean;
            if (v < 0) continue;
            if (best < 0 ||
                v > (top1 ? rows[best].top1_mean : rows[best].top5_mean))
                best = static_cast<int>(i);
        }
        if (best >= 0) (top1 ? rows[best].top1 : rows[best].top5) += " *";
    };
    mark_best(kGeometric, true);
    mark_best(kGeometric, false);
    mark_best(kPhotometric, true);
    mark_best(kPhotometric, false);

    std::size_t w0 = 10, w1 = 16;
    for (const auto& r : rows) {
        w0 = std::max(w0, r.scheme.size());
        w1 = std::max(w1, r.top1.size());
    }

    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(w0) + 2) << "Scheme"
        << std::setw(static_cast<int>(w1) + 2) << "Top-1 Accuracy" << "Top-5 Accuracy\n";
    out << std::string(w0 + w1 + 20, '-') << "\n";
    for (const auto& r : rows)
        out << std::left << std::setw(static_cast<int>(w0) + 2) << r.scheme
            << std::setw(static_cast<int>(w1) + 2) << r.top1 << r.top5 << "\n";
    return out.str();
}

} // namespace augbench
