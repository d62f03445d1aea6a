#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "namegauge/classify.hpp"
#include "namegauge/harness.hpp"
#include "namegauge/linkage.hpp"
#include "namegauge/rng.hpp"
#include "namegauge/simulate.hpp"
#include "namegauge/synthetic.hpp"
#include "namegauge/version.hpp"

namespace fs = std::filesystem;
using namespace namegauge;

namespace {

std::set<std::string> parse_suffixes(const std::string& csv) {
    std::set<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string tok = csv.substr(start, comma == std::string::npos ? comma : comma - start);
        std::string norm = normalize_text(tok);
        if (!norm.empty()) out.insert(norm);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<ClassifierKind> parse_classifiers(const std::string& csv) {
    std::map<std::string, ClassifierKind> names = {
        {"rf", ClassifierKind::RandomForest},
        {"lr", ClassifierKind::LogisticRegression},
        {"gnb", ClassifierKind::GaussianNB},
    };
    std::vector<ClassifierKind> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string tok = csv.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!tok.empty()) {
            auto it = names.find(tok);
            if (it == names.end())
                throw CLI::ValidationError("--classifiers", "unknown classifier '" + tok + "'");
            out.push_back(it->second);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

SimilarityScheme parse_scheme(const std::string& name) {
    if (name == "all-ngram") return SimilarityScheme::AllNGram;
    if (name == "distinct1") return SimilarityScheme::Distinct1;
    if (name == "distinct2") return SimilarityScheme::Distinct2;
    throw CLI::ValidationError("--scheme", "unknown scheme '" + name + "'");
}

void print_stats(const Corpus& corpus, std::ostream& os) {
    CorpusStats st = corpus_stats(corpus);
    os << "records:            " << st.records << "\n";
    os << "instances:          " << st.instances << "\n";
    os << "focal instances:    " << st.focal_instances << "\n";
    os << "labeled focal:      " << st.labeled_focal_instances << "\n";
    os << "distinct authors:   " << st.distinct_labels << "\n";
    char buf[64];
    auto pct = [&](std::size_t k) {
        std::snprintf(buf, sizeof buf, "%zu (%.2f%%)", k,
                      st.instances ? 100.0 * double(k) / double(st.instances) : 0.0);
        return std::string(buf);
    };
    os << "null forename:      " << pct(st.null_forename) << "\n";
    os << "all initialized:    " << pct(st.all_initialized) << "\n";
    os << "one or more full:   " << pct(st.one_or_more_full) << "\n";
    os << "cumulative forename length profile (fraction with <= n letters):\n";
    for (const auto& row : cumulative_ngram_profile(corpus)) {
        std::snprintf(buf, sizeof buf, "  n=%-2d %.4f", row.n, row.fraction);
        os << buf << "\n";
    }
}

nlohmann::json stats_json(const Corpus& corpus) {
    CorpusStats st = corpus_stats(corpus);
    nlohmann::json j;
    j["records"] = st.records;
    j["instances"] = st.instances;
    j["focal_instances"] = st.focal_instances;
    j["labeled_focal_instances"] = st.labeled_focal_instances;
    j["distinct_labels"] = st.distinct_labels;
    j["null_forename"] = st.null_forename;
    j["all_initialized"] = st.all_initialized;
    j["one_or_more_full"] = st.one_or_more_full;
    nlohmann::json profile = nlohmann::json::array();
    for (const auto& row : cumulative_ngram_profile(corpus))
        profile.push_back({{"n", row.n}, {"fraction", row.fraction}});
    j["cumulative_ngram_profile"] = std::move(profile);
    return j;
}

void export_clusters(const Clustering& clustering, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "instance_id,cluster_id\n";
    std::vector<std::pair<std::string, std::string>> rows(clustering.assignment.begin(),
                                                          clustering.assignment.end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [id, cid] : rows) out << id << ',' << cid << '\n';
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"author name disambiguation workbench"};
    app.set_version_flag("--version", NAMEGAUGE_VERSION);
    app.require_subcommand(1);

    std::string suffix_csv = "jr,sr,ii,iii,iv";
    app.add_option("--suffixes", suffix_csv,
                   "generational suffixes kept attached to surnames (comma separated)")
        ->capture_default_str();

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    std::string synth_profile = "forename-separable";
    SynthConfig synth_cfg;
    std::string synth_out;
    synth->add_option("--profile", synth_profile, "forename-separable | pure-homonym | mixed")
        ->capture_default_str();
    synth->add_option("--authors", synth_cfg.authors, "number of focal authors")
        ->capture_default_str();
    synth->add_option("--papers", synth_cfg.papers_per_author, "papers per author")
        ->capture_default_str();
    synth->add_option("--block-size", synth_cfg.authors_per_block, "authors per block")
        ->capture_default_str();
    synth->add_option("--seed", synth_cfg.seed, "generator seed")->capture_default_str();
    synth->add_option("--out", synth_out, "output JSONL path")->required();

    // ---- stats ----
    auto* stats = app.add_subcommand("stats", "print corpus statistics");
    std::string stats_corpus, stats_json_path;
    stats->add_option("--corpus", stats_corpus, "JSONL corpus")->required();
    stats->add_option("--json", stats_json_path, "also write the statistics as JSON");

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "run a simulation sweep and write CSV results");
    std::string sweep_kind = "ratio";
    std::string sweep_corpus, sweep_donor, sweep_out_dir;
    std::string sweep_classifiers = "rf,lr,gnb";
    std::string sweep_scheme = "all-ngram";
    std::string sweep_scope = "all";
    std::string sweep_linkage = "average";
    std::string sweep_agg = "pool";
    std::string sweep_stopwords;
    ExperimentSpec spec;
    std::vector<double> sweep_ratios;
    std::vector<std::string> sweep_ngrams;
    double sweep_threshold_value = -1.0;
    sweep->add_option("--kind", sweep_kind, "ratio | ngram | scheme | restore")
        ->capture_default_str();
    sweep->add_option("--corpus", sweep_corpus, "JSONL corpus")->required();
    sweep->add_option("--donor", sweep_donor, "donor corpus (kind=restore)");
    sweep->add_option("--out", sweep_out_dir, "output directory")->required();
    sweep->add_option("--classifiers", sweep_classifiers,
                      "comma separated subset of rf,lr,gnb (empty = heuristic only)")
        ->capture_default_str();
    sweep->add_option("--scheme", sweep_scheme, "all-ngram | distinct1 | distinct2")
        ->capture_default_str();
    sweep->add_option("--iterations", spec.iterations, "iterations per sweep value")
        ->capture_default_str();
    sweep->add_option("--seed", spec.seed, "base seed")->capture_default_str();
    sweep->add_option("--split", spec.split_fraction, "train fraction of focal instances")
        ->capture_default_str();
    sweep->add_option("--ratio", sweep_ratios,
                      "restrict the ratio grid to these values (repeatable)");
    sweep->add_option("--ngram", sweep_ngrams,
                      "restrict the n-gram grid to these values (1..10 or 'all', repeatable)");
    sweep->add_option("--ratio-scope", sweep_scope, "all | focal")->capture_default_str();
    sweep->add_option("--linkage", sweep_linkage, "average | single | complete")
        ->capture_default_str();
    sweep->add_option("--coauthor-agg", sweep_agg, "pool | mean")->capture_default_str();
    sweep->add_option("--stopwords", sweep_stopwords, "stopword file overriding the built-in list");
    sweep->add_option("--threshold", sweep_threshold_value,
                      "fixed clustering threshold instead of the per-block oracle sweep");
    sweep->add_option("--threads", spec.threads, "worker threads")->capture_default_str();

    // ---- restore ----
    auto* restore = app.add_subcommand("restore", "restore initialized forenames via title links");
    std::string restore_src, restore_donor, restore_out, restore_report;
    restore->add_option("--src", restore_src, "source JSONL corpus")->required();
    restore->add_option("--donor", restore_donor, "donor JSONL corpus")->required();
    restore->add_option("--out", restore_out, "restored corpus path")->required();
    restore->add_option("--report", restore_report, "JSON report path");

    // ---- train ----
    auto* train = app.add_subcommand("train", "train a pairwise classifier and save it");
    std::string train_corpus, train_classifier = "rf", train_scheme = "all-ngram";
    std::string train_agg = "pool", train_stopwords, train_model;
    double train_ratio = -1.0;
    std::uint64_t train_seed = 0;
    train->add_option("--corpus", train_corpus, "labeled JSONL corpus")->required();
    train->add_option("--classifier", train_classifier, "rf | lr | gnb")->capture_default_str();
    train->add_option("--scheme", train_scheme, "all-ngram | distinct1 | distinct2")
        ->capture_default_str();
    train->add_option("--coauthor-agg", train_agg, "pool | mean")->capture_default_str();
    train->add_option("--stopwords", train_stopwords, "stopword file");
    train->add_option("--ratio", train_ratio, "apply this full-forename ratio before training");
    train->add_option("--seed", train_seed, "seed for the ratio draw and forest")
        ->capture_default_str();
    train->add_option("--save-model", train_model, "model output path")->required();

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "cluster a labeled corpus with a saved model");
    std::string eval_corpus, eval_model, eval_scheme = "all-ngram", eval_agg = "pool";
    std::string eval_stopwords, eval_linkage = "average", eval_clusters;
    double eval_threshold = -1.0;
    eval->add_option("--corpus", eval_corpus, "labeled JSONL corpus")->required();
    eval->add_option("--load-model", eval_model, "model path from 'train'")->required();
    eval->add_option("--scheme", eval_scheme, "must match the trained model's scheme")
        ->capture_default_str();
    eval->add_option("--coauthor-agg", eval_agg, "pool | mean")->capture_default_str();
    eval->add_option("--stopwords", eval_stopwords, "stopword file");
    eval->add_option("--linkage", eval_linkage, "average | single | complete")
        ->capture_default_str();
    eval->add_option("--threshold", eval_threshold,
                     "fixed clustering threshold instead of the oracle sweep");
    eval->add_option("--export-clusters", eval_clusters, "write instance_id,cluster_id CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        std::set<std::string> suffixes = parse_suffixes(suffix_csv);

        if (*synth) {
            if (synth_profile == "forename-separable")
                synth_cfg.profile = SynthProfile::ForenameSeparable;
            else if (synth_profile == "pure-homonym")
                synth_cfg.profile = SynthProfile::PureHomonym;
            else if (synth_profile == "mixed")
                synth_cfg.profile = SynthProfile::Mixed;
            else
                throw std::runtime_error("unknown profile '" + synth_profile + "'");
            Corpus corpus = generate_synthetic(synth_cfg);
            write_corpus_jsonl(corpus, synth_out);
            std::cout << "wrote " << corpus.records.size() << " records to " << synth_out << "\n";
            return 0;
        }

        if (*stats) {
            Corpus corpus = parse_corpus(stats_corpus, CorpusFormat::Jsonl, suffixes);
            print_stats(corpus, std::cout);
            if (!stats_json_path.empty()) {
                std::ofstream out(stats_json_path);
                if (!out) throw std::runtime_error("cannot open " + stats_json_path);
                out << stats_json(corpus).dump(2) << "\n";
            }
            return 0;
        }

        if (*sweep) {
            StopwordSet stopwords;
            if (!sweep_stopwords.empty()) {
                stopwords = load_stopwords(sweep_stopwords);
                spec.features.stopwords = &stopwords;
            }
            spec.features.scheme = parse_scheme(sweep_scheme);
            spec.features.coauthor_agg = sweep_agg == "mean" ? CoauthorAgg::Mean : CoauthorAgg::Pool;
            spec.classifiers = parse_classifiers(sweep_classifiers);
            spec.ratio_scope = sweep_scope == "focal" ? RatioScope::Focal : RatioScope::All;
            if (sweep_linkage == "single") spec.linkage = Linkage::Single;
            else if (sweep_linkage == "complete") spec.linkage = Linkage::Complete;
            else spec.linkage = Linkage::Average;
            if (sweep_threshold_value >= 0.0) spec.fixed_threshold = sweep_threshold_value;
            spec.ratios = sweep_ratios;
            for (const auto& v : sweep_ngrams)
                spec.ngram_values.push_back(v == "all" ? kNgramAll : std::stoi(v));

            Corpus corpus = parse_corpus(sweep_corpus, CorpusFormat::Jsonl, suffixes);
            fs::create_directories(sweep_out_dir);
            std::vector<std::string> outputs;

            if (sweep_kind == "ratio" || sweep_kind == "ngram") {
                spec.kind = sweep_kind == "ratio" ? SweepKind::Ratio : SweepKind::Ngram;
                SweepResult result = spec.kind == SweepKind::Ratio
                                         ? run_ratio_sweep(corpus, spec)
                                         : run_ngram_sweep(corpus, spec);
                std::string csv = (fs::path(sweep_out_dir) / "results.csv").string();
                write_csv(result, csv);
                outputs.push_back("results.csv");
            } else if (sweep_kind == "scheme") {
                spec.kind = SweepKind::Scheme;
                for (auto& [scheme, result] : run_scheme_comparison(corpus, spec)) {
                    std::string name = std::string("results_") + scheme_name(scheme) + ".csv";
                    write_csv(result, (fs::path(sweep_out_dir) / name).string());
                    outputs.push_back(name);
                }
            } else if (sweep_kind == "restore") {
                spec.kind = SweepKind::Restore;
                if (sweep_donor.empty())
                    throw std::runtime_error("--kind restore requires --donor");
                Corpus donor = parse_corpus(sweep_donor, CorpusFormat::Jsonl, suffixes);
                SweepResult result = run_restore_experiment(corpus, donor, spec);
                std::string csv = (fs::path(sweep_out_dir) / "results.csv").string();
                write_csv(result, csv);
                outputs.push_back("results.csv");
            } else {
                throw std::runtime_error("unknown sweep kind '" + sweep_kind + "'");
            }
            write_manifest(spec, sweep_corpus, outputs,
                           (fs::path(sweep_out_dir) / "manifest.json").string());
            std::cout << "wrote " << outputs.size() << " result file(s) and manifest.json to "
                      << sweep_out_dir << "\n";
            return 0;
        }

        if (*restore) {
            Corpus src = parse_corpus(restore_src, CorpusFormat::Jsonl, suffixes);
            Corpus donor = parse_corpus(restore_donor, CorpusFormat::Jsonl, suffixes);
            std::vector<TitleLink> links = link_by_title(src, donor);
            auto [restored, count] = restore_forenames(src, links, donor);
            write_corpus_jsonl(restored, restore_out);
            CorpusStats before = corpus_stats(src);
            CorpusStats after = corpus_stats(restored);
            if (!restore_report.empty()) {
                nlohmann::json j;
                j["linked_records"] = links.size();
                j["restored_instances"] = count;
                j["all_initialized_before"] = before.all_initialized;
                j["all_initialized_after"] = after.all_initialized;
                j["full_before"] = before.one_or_more_full;
                j["full_after"] = after.one_or_more_full;
                std::ofstream out(restore_report);
                if (!out) throw std::runtime_error("cannot open " + restore_report);
                out << j.dump(2) << "\n";
            }
            std::cout << "linked " << links.size() << " record pairs, restored " << count
                      << " instances\n";
            return 0;
        }

        if (*train) {
            StopwordSet stopwords;
            FeatureOptions fopts;
            if (!train_stopwords.empty()) {
                stopwords = load_stopwords(train_stopwords);
                fopts.stopwords = &stopwords;
            }
            fopts.scheme = parse_scheme(train_scheme);
            fopts.coauthor_agg = train_agg == "mean" ? CoauthorAgg::Mean : CoauthorAgg::Pool;
            std::vector<ClassifierKind> kinds = parse_classifiers(train_classifier);
            if (kinds.size() != 1)
                throw std::runtime_error("--classifier must name exactly one of rf,lr,gnb");
            Corpus corpus = parse_corpus(train_corpus, CorpusFormat::Jsonl, suffixes);
            if (train_ratio >= 0.0)
                corpus = apply_full_ratio(corpus, train_ratio, train_seed);
            FeatureContext ctx(corpus, fopts);
            std::vector<TrainingPair> pairs = collect_training_pairs(corpus, ctx);
            PairClassifier model =
                PairClassifier::train(kinds[0], pairs, mix_seed(train_seed, SALT_TRAIN));
            model.save(train_model);
            std::cout << "trained " << classifier_name(kinds[0]) << " on " << pairs.size()
                      << " pairs, saved to " << train_model << "\n";
            return 0;
        }

        if (*eval) {
            StopwordSet stopwords;
            FeatureOptions fopts;
            if (!eval_stopwords.empty()) {
                stopwords = load_stopwords(eval_stopwords);
                fopts.stopwords = &stopwords;
            }
            fopts.scheme = parse_scheme(eval_scheme);
            fopts.coauthor_agg = eval_agg == "mean" ? CoauthorAgg::Mean : CoauthorAgg::Pool;
            Linkage linkage = eval_linkage == "single"    ? Linkage::Single
                              : eval_linkage == "complete" ? Linkage::Complete
                                                           : Linkage::Average;
            Corpus corpus = parse_corpus(eval_corpus, CorpusFormat::Jsonl, suffixes);
            PairClassifier model = PairClassifier::load(eval_model);
            FeatureContext ctx(corpus, fopts);
            Clustering truth = truth_clustering(corpus);
            std::optional<double> threshold;
            if (eval_threshold >= 0.0) threshold = eval_threshold;
            Clustering pred = cluster_with_model(corpus, ctx, model, truth, linkage, threshold);
            B3Score score = b3(pred, truth);
            std::printf("b3_precision=%.6f b3_recall=%.6f b3_f1=%.6f\n", score.precision,
                        score.recall, score.f1);
            if (!eval_clusters.empty()) export_clusters(pred, eval_clusters);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
