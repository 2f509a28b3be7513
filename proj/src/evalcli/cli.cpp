/*
 *  Copyright 2026 The docsr Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include "docsr/cli.hpp"

#include "docsr/bicubic.hpp"
#include "docsr/dataset_file.hpp"
#include "docsr/error.hpp"
#include "docsr/evaluate.hpp"
#include "docsr/gradcheck_suite.hpp"
#include "docsr/parallel.hpp"
#include "docsr/trainer.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace docsr {

namespace {

const std::map<std::string, Activation> kActivations{{"relu", Activation::ReLU}, {"prelu", Activation::PReLU}};
const std::map<std::string, ReportFormat> kFormats{
    {"text", ReportFormat::Text}, {"csv", ReportFormat::Csv}, {"json", ReportFormat::Json}};

void write_output(const std::string& data, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << data;
        out.flush();
        return;
    }
    std::ofstream f(path, std::ios::trunc);
    if (!f || !(f << data))
        throw IoError("cannot write " + path);
}

struct GenDataArgs {
    std::string corpus_dir;
    std::string out;
    std::size_t count = 10000;
    std::uint64_t seed = 0;
    bool no_reject_blank = false;
    int threads = 0;
};

int run_gen_data(const GenDataArgs& a, std::ostream& err)
{
    parallel::set_threads(a.threads);
    std::vector<GrayImage> corpus;
    for (const auto& p : list_images(a.corpus_dir))
        corpus.push_back(load_image(p));
    if (corpus.empty())
        throw EmptyCorpus("no .pgm/.png/.ppm images in " + a.corpus_dir);
    const NormStats stats = compute_norm_stats(corpus);
    SamplingOptions opts;
    opts.reject_blank = !a.no_reject_blank;
    const auto pairs = sample_corpus_pairs(corpus, a.count, a.seed, stats, opts);
    write_dataset(pairs, stats, a.out);
    fmt::print(err, "wrote {} pairs from {} images to {} (mean {:.6f})\n", pairs.size(), corpus.size(), a.out,
               stats.mean);
    return kExitOk;
}

struct TrainArgs {
    std::string dataset;
    std::string out;
    std::string log;
    std::string activation = "prelu";
    std::string checkpoint_dir;
    TrainConfig cfg;
};

int run_train(TrainArgs a, std::ostream& err)
{
    a.cfg.activation = kActivations.at(a.activation);
    if (!a.log.empty())
        a.cfg.log_path = a.log;
    if (!a.checkpoint_dir.empty())
        a.cfg.checkpoint_dir = a.checkpoint_dir;
    a.cfg.validate();

    Dataset ds = read_dataset(a.dataset);
    SrModel model = build_model(a.cfg.activation, a.cfg.rng_seed);
    model.norm = ds.stats;
    fmt::print(err, "training {} model on {} pairs: {} epochs, lr {}, batch {}, momentum {}\n", a.activation,
               ds.pairs.size(), a.cfg.epochs, a.cfg.learning_rate, a.cfg.batch_size, a.cfg.momentum);
    const TrainLog log = train(model, ds.pairs, a.cfg, [&](const EpochRecord& r) {
        fmt::print(err, "epoch {:4d}  train {:.6f}", r.epoch, r.train_loss);
        if (r.val_loss)
            fmt::print(err, "  val {:.6f}", *r.val_loss);
        if (r.slopes)
            fmt::print(err, "  slopes [{:.3f}, {:.3f}]", r.slopes->min, r.slopes->max);
        fmt::print(err, "  {:.1f}s\n", r.seconds);
    });

    model.metadata = {
        {"activation", a.activation},
        {"epochs", std::to_string(a.cfg.epochs)},
        {"learning_rate", fmt::format("{}", a.cfg.learning_rate)},
        {"batch_size", std::to_string(a.cfg.batch_size)},
        {"momentum", fmt::format("{}", a.cfg.momentum)},
        {"seed", std::to_string(a.cfg.rng_seed)},
        {"pairs", std::to_string(ds.pairs.size())},
        {"final_train_loss", fmt::format("{:.6f}", log.epochs.back().train_loss)},
    };
    save_model(model, a.out);
    fmt::print(err, "saved model to {}\n", a.out);
    return kExitOk;
}

struct SuperResolveArgs {
    std::string model;
    std::string image;
    std::string out;
    bool upscale = false;
    int threads = 0;
};

int run_super_resolve(const SuperResolveArgs& a, std::ostream& err)
{
    parallel::set_threads(a.threads);
    const SrModel model = load_model(a.model);
    GrayImage page = load_image(a.image);
    if (a.upscale)
        page = bicubic_resize(page, page.height * 2, page.width * 2);
    const GrayImage result = super_resolve_page(model, page);
    save_image(result, a.out);
    fmt::print(err, "wrote {}x{} image to {}\n", result.width, result.height, a.out);
    return kExitOk;
}

struct EvalArgs {
    std::string model;
    std::string test_dir;
    std::string manifest;
    std::string format = "text";
    std::string out;
    int threads = 0;
};

int run_eval(const EvalArgs& a, std::ostream& out, std::ostream& err)
{
    parallel::set_threads(a.threads);
    const SrModel model = load_model(a.model);
    std::optional<std::filesystem::path> manifest;
    if (!a.manifest.empty())
        manifest = a.manifest;
    const auto pages = load_test_pages(a.test_dir, manifest);
    const EvalReport report = evaluate_corpus(model, pages);
    write_output(render_report(report, kFormats.at(a.format)), a.out, out);
    if (report.overall)
        fmt::print(err, "{} pages: bicubic {:.2f} dB, model {:.2f} dB, gain {:+.2f} dB\n", report.overall->count,
                   report.overall->bicubic_db, report.overall->model_db, report.overall->gain_db);
    return kExitOk;
}

struct GradCheckArgs {
    std::uint64_t seed = 1;
    double tol = 1e-4;
    double eps = 1e-3;
};

int run_grad_check(const GradCheckArgs& a, std::ostream& out, std::ostream& err)
{
    GradCheckOptions opts;
    opts.tolerance = a.tol;
    opts.epsilon = a.eps;
    bool ok = true;
    int checked = 0;
    for (const auto& c : run_grad_check_suite(a.seed, opts)) {
        for (const auto& r : c.reports)
            fmt::print(out, "{:<28} {:<16} n={:<6} max_rel_err={:.3e}  {}\n", c.name, r.parameter_name, r.entries,
                       r.max_relative_error, r.pass ? "ok" : "FAIL");
        ok = ok && c.pass();
        ++checked;
    }
    fmt::print(out, "{} {} configurations at tolerance {}\n", ok ? "PASS" : "FAIL", checked, a.tol);
    out.flush();
    if (!ok) {
        fmt::print(err, "gradient check failed (tolerance {})\n", a.tol);
        return kExitRuntime;
    }
    return kExitOk;
}

int run_inspect(const std::string& path, std::ostream& out)
{
    const SrModel m = load_model(path);
    fmt::print(out, "model      {}\n", path);
    fmt::print(out, "format     DSR1 v1\n");
    fmt::print(out, "activation {}\n", to_string(m.activation));
    fmt::print(out, "parameters {}\n", m.net.parameter_count());
    fmt::print(out, "norm       mean {:.6f}  scale {:.8f}\n", m.norm.mean, m.norm.scale);
    Shape3 shape{16, 16, 1};
    for (std::size_t i = 0; i < m.net.layers.size(); ++i) {
        const auto& l = m.net.layers[i];
        shape = conv_output_shape(shape.height, shape.width, l.spec);
        fmt::print(out, "conv{}      {}x{}x{}x{}  {:<5} -> {}x{}x{}\n", i + 1, l.spec.kernel, l.spec.kernel,
                   l.spec.in_channels, l.spec.out_channels, to_string(l.spec.activation), shape.height, shape.width,
                   shape.channels);
    }
    for (const auto& [k, v] : m.metadata)
        fmt::print(out, "meta       {} = {}\n", k, v);
    out.flush();
    return kExitOk;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Document image super-resolution with a 5-layer CNN", "docsr"};
    app.require_subcommand(1);

    GenDataArgs gen;
    auto* gen_cmd = app.add_subcommand("gen-data", "Sample LR/HR patch pairs from a directory of pages");
    gen_cmd->add_option("corpus", gen.corpus_dir, "Directory of .pgm/.png pages")->required()->check(CLI::ExistingDirectory);
    gen_cmd->add_option("-o,--out", gen.out, "Dataset file to write")->required();
    gen_cmd->add_option("--count", gen.count, "Total number of pairs")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Sampling seed")->capture_default_str();
    gen_cmd->add_flag("--no-reject-blank", gen.no_reject_blank, "Keep low-variance (blank) HR windows");
    gen_cmd->add_option("--threads", gen.threads, "OpenMP threads (0 = default)");

    TrainArgs tr;
    auto* train_cmd = app.add_subcommand("train", "Train a model on a dataset file");
    train_cmd->add_option("dataset", tr.dataset, "Dataset file from gen-data")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("-o,--out", tr.out, "Model file to write")->required();
    train_cmd->add_option("--log", tr.log, "Line-delimited JSON training log");
    train_cmd->add_option("--epochs", tr.cfg.epochs)->capture_default_str();
    train_cmd->add_option("--lr", tr.cfg.learning_rate, "Learning rate")->capture_default_str();
    train_cmd->add_option("--batch", tr.cfg.batch_size, "Mini-batch size")->capture_default_str();
    train_cmd->add_option("--momentum", tr.cfg.momentum)->capture_default_str();
    train_cmd->add_option("--seed", tr.cfg.rng_seed)->capture_default_str();
    train_cmd->add_option("--activation", tr.activation)
        ->check(CLI::IsMember({"relu", "prelu"}))
        ->capture_default_str();
    train_cmd->add_option("--checkpoint-every", tr.cfg.checkpoint_every, "Epochs between checkpoints")
        ->capture_default_str();
    train_cmd->add_option("--checkpoint-dir", tr.checkpoint_dir);
    train_cmd->add_option("--val-fraction", tr.cfg.validation_fraction)->capture_default_str();
    train_cmd->add_option("--threads", tr.cfg.threads, "OpenMP threads (0 = default)");

    SuperResolveArgs sr;
    auto* sr_cmd = app.add_subcommand("super-resolve", "Reconstruct a page with a trained model");
    sr_cmd->add_option("model", sr.model)->required()->check(CLI::ExistingFile);
    sr_cmd->add_option("image", sr.image, "Input page in the upsampled frame")->required()->check(CLI::ExistingFile);
    sr_cmd->add_option("-o,--out", sr.out, "Output image (.pgm or .png)")->required();
    sr_cmd->add_flag("--upscale", sr.upscale, "Bicubic-upsample the input x2 first");
    sr_cmd->add_option("--threads", sr.threads, "OpenMP threads (0 = default)");

    EvalArgs ev;
    auto* eval_cmd = app.add_subcommand("eval", "PSNR of model vs. bicubic on held-out pages");
    eval_cmd->add_option("model", ev.model)->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("test_dir", ev.test_dir)->required()->check(CLI::ExistingDirectory);
    eval_cmd->add_option("--manifest", ev.manifest, "JSON array of {path, language, dpi}")->check(CLI::ExistingFile);
    eval_cmd->add_option("--format", ev.format)->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
    eval_cmd->add_option("-o,--out", ev.out, "Write the report here instead of stdout");
    eval_cmd->add_option("--threads", ev.threads, "OpenMP threads (0 = default)");

    GradCheckArgs gc;
    auto* gc_cmd = app.add_subcommand("grad-check", "Finite-difference check of every backward pass");
    gc_cmd->add_option("--seed", gc.seed)->capture_default_str();
    gc_cmd->add_option("--tol", gc.tol, "Maximum relative error")->capture_default_str();
    gc_cmd->add_option("--eps", gc.eps, "Central difference step")->capture_default_str();

    std::string inspect_path;
    auto* inspect_cmd = app.add_subcommand("inspect", "Print a model file's header and metadata");
    inspect_cmd->add_option("model", inspect_path)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        err << app.help();
        return kExitUsage;
    }

    try {
        if (*gen_cmd)
            return run_gen_data(gen, err);
        if (*train_cmd)
            return run_train(tr, err);
        if (*sr_cmd)
            return run_super_resolve(sr, err);
        if (*eval_cmd)
            return run_eval(ev, out, err);
        if (*gc_cmd)
            return run_grad_check(gc, out, err);
        if (*inspect_cmd)
            return run_inspect(inspect_path, out);
    } catch (const std::invalid_argument& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const PageTooSmall& e) {
        fmt::print(err, "error: PageTooSmall: {}\n", e.what());
        return kExitRuntime;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitRuntime;
    }
    return kExitUsage;
}

} // namespace docsr
