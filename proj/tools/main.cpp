// taplab — command line front end for the multi-tap keypad toolkit.
//
// Exit codes: 0 success, 2 usage error, 3 input/validation error.
// Reports go to stdout, diagnostics to stderr.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "taplab/frequency.hpp"
#include "taplab/layout.hpp"
#include "taplab/metrics.hpp"
#include "taplab/optimizer.hpp"
#include "taplab/reports.hpp"
#include "taplab/tap_engine.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace taplab;

// Wrong invocation rather than bad input data; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string read_input(const std::string& path_or_dash) {
    if (path_or_dash == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path_or_dash, std::ios::binary);
    if (!in) {
        throw Error("cannot open file: " + path_or_dash);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path_or_dash, const std::string& content) {
    if (path_or_dash == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path_or_dash, std::ios::binary);
    if (!out) {
        throw Error("cannot write file: " + path_or_dash);
    }
    out << content;
}

// Inline text values also accept '-' to read stdin (one trailing newline
// stripped, so `echo | taplab ...` pipes behave).
std::string text_argument(const std::string& value) {
    if (value != "-") {
        return value;
    }
    std::string text = read_input("-");
    if (!text.empty() && text.back() == '\n') {
        text.pop_back();
    }
    return text;
}

Layout load_layout_argument(const std::string& value) {
    for (const std::string& name : builtin_layout_names()) {
        if (value == name) {
            return builtin_layout(value);
        }
    }
    if (value == "-" || std::filesystem::exists(value)) {
        return parse_layout(read_input(value));
    }
    throw UsageError("unknown layout: " + value + " (not a builtin name or a readable file)");
}

FrequencyTable load_frequency_argument(const std::string& value) {
    if (value == "uniform-letters") {
        return uniform_letters();
    }
    return parse_frequency(read_input(value));
}

Format parse_format(const std::string& value) {
    try {
        return format_from_string(value);
    } catch (const UnsupportedFormat& e) {
        throw UsageError(e.what());
    }
}

Mode parse_mode(const std::string& value) {
    try {
        return mode_from_string(value);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

CostModel parse_cost_model(const std::string& value) {
    if (value == "exact") {
        return CostModel::exact();
    }
    if (value.starts_with("flat-digit:")) {
        const std::string arg = value.substr(std::string("flat-digit:").size());
        try {
            const int taps = std::stoi(arg);
            if (taps >= 1) return CostModel::flat_digit(taps);
        } catch (const std::exception&) {
        }
        throw UsageError("flat-digit needs a positive tap count, e.g. flat-digit:4");
    }
    throw UsageError("unknown cost model \"" + value + "\" (expected exact or flat-digit:<k>)");
}

char single_key_argument(const std::string& value, const char* what) {
    if (value.size() != 1) {
        throw UsageError(std::string(what) + " must be a single key glyph");
    }
    return value[0];
}

Json plan_fields(const ModePlan& plan) {
    Json j;
    j["toggle_before"] = plan.toggle_before;
    j["total_presses"] = plan.total_presses;
    return j;
}

struct EncodeArgs {
    std::string layout = "baseline";
    std::string text;
    std::string start_mode = "alpha";
    std::string strategy = "timeout";
    std::string commit_key = "*";
    std::string plan = "none";
    std::string cost_model = "exact";
    std::string format = "text";
};

void run_encode(const EncodeArgs& args) {
    const Layout layout = load_layout_argument(args.layout);
    const std::string text = text_argument(args.text);
    const Mode start_mode = parse_mode(args.start_mode);
    const CostModel model = parse_cost_model(args.cost_model);
    const Format format = parse_format(args.format);

    CommitStrategy strategy = CommitStrategy::timeout();
    if (args.strategy == "next-key") {
        strategy = CommitStrategy::next_key(single_key_argument(args.commit_key, "--commit-key"));
    } else if (args.strategy != "timeout") {
        throw UsageError("unknown commit strategy \"" + args.strategy +
                         "\" (expected timeout or next-key)");
    }

    std::optional<ModePlan> plan;
    if (args.plan == "auto") {
        plan = plan_modes(text, layout, start_mode);
    } else if (args.plan != "none") {
        throw UsageError("unknown plan \"" + args.plan + "\" (expected auto or none)");
    }
    const ModePlan* plan_ptr = plan ? &*plan : nullptr;

    const EncodeResult encoded = encode(text, layout, strategy, start_mode, plan_ptr);
    KeystrokeReport report = encoded.report;
    if (model.kind == CostModel::Kind::FlatDigit) {
        report = count_keystrokes(text, layout, model, strategy, start_mode, plan_ptr);
    }

    if (format == Format::Json) {
        Json out;
        out["layout"] = layout.name;
        out["text"] = text;
        out["start_mode"] = to_string(start_mode);
        out["strategy"] = args.strategy;
        out["cost_model"] = args.cost_model;
        out["events"] = format_tap_sequence(encoded.taps);
        const Json report_fields = Json::parse(keystroke_report_to_json(report));
        for (const auto& [key, value] : report_fields.items()) {
            out[key] = value;
        }
        if (plan) {
            out["plan"] = plan_fields(*plan);
        }
        std::cout << out.dump(2) << "\n";
        return;
    }
    if (format == Format::Text) {
        std::cout << "events  : " << format_tap_sequence(encoded.taps) << "\n"
                  << format_report(report, Format::Text);
        if (plan) {
            std::cout << format_report(*plan, Format::Text);
        }
        return;
    }
    throw UnsupportedFormat("encode output has no csv rendering");
}

struct DecodeArgs {
    std::string layout = "baseline";
    std::string taps;
    std::string format = "text";
};

void run_decode(const DecodeArgs& args) {
    const Layout layout = load_layout_argument(args.layout);
    const TapSequence taps = parse_tap_sequence(text_argument(args.taps));
    const Format format = parse_format(args.format);
    const std::string text = decode(taps, layout);

    if (format == Format::Json) {
        Json out;
        out["layout"] = layout.name;
        out["events"] = format_tap_sequence(taps);
        out["text"] = text;
        std::cout << out.dump(2) << "\n";
        return;
    }
    if (format == Format::Text) {
        std::cout << text << "\n";
        return;
    }
    throw UnsupportedFormat("decode output has no csv rendering");
}

struct CorpusArgs {
    bool digits = false;
    bool no_lowercase = false;
    std::string policy = "drop";
};

NormalizeOptions normalize_options(const CorpusArgs& args) {
    NormalizeOptions options;
    options.include_digits = args.digits;
    options.lowercase = !args.no_lowercase;
    if (args.policy == "drop") {
        options.policy = NormalizeOptions::Policy::Drop;
    } else if (args.policy == "error") {
        options.policy = NormalizeOptions::Policy::Error;
    } else {
        throw UsageError("unknown policy \"" + args.policy + "\" (expected drop or error)");
    }
    return options;
}

struct AnalyzeArgs {
    std::string corpus;
    std::string layout = "baseline";
    CorpusArgs corpus_options;
    std::string format = "text";
};

void run_analyze(const AnalyzeArgs& args) {
    const Layout layout = load_layout_argument(args.layout);
    const Format format = parse_format(args.format);
    const FrequencyTable freq =
        build_frequency(read_input(args.corpus), normalize_options(args.corpus_options));
    const double kspc = expected_kspc(layout, freq, Mode::Alpha);

    if (format == Format::Json) {
        Json out;
        out["layout"] = layout.name;
        out["corpus_symbols"] = freq.total_count;
        out["distinct_symbols"] = freq.probabilities.size();
        out["dropped"] = freq.dropped;
        out["expected_kspc"] = kspc;
        std::cout << out.dump(2) << "\n";
        return;
    }
    if (format == Format::Text) {
        std::cout << "layout           : " << layout.name << "\n"
                  << "corpus symbols   : " << freq.total_count << "\n"
                  << "distinct symbols : " << freq.probabilities.size() << "\n"
                  << "dropped          : " << freq.dropped << "\n"
                  << "expected kspc    : " << fixed6(kspc) << "\n";
        return;
    }
    throw UnsupportedFormat("analyze output has no csv rendering");
}

struct CompareArgs {
    std::vector<std::string> layouts;
    std::string freq;
    std::string corpus;
    std::string sample;
    bool sample_given = false;
    std::string format = "text";
};

void run_compare(const CompareArgs& args) {
    if (args.layouts.size() < 2) {
        throw UsageError("compare needs at least two layouts (--layouts a,b)");
    }
    if (args.freq.empty() == args.corpus.empty()) {
        throw UsageError("compare needs exactly one of --freq or --corpus");
    }
    const Format format = parse_format(args.format);
    std::vector<Layout> layouts;
    for (const std::string& name : args.layouts) {
        layouts.push_back(load_layout_argument(name));
    }
    const FrequencyTable freq = args.freq.empty()
                                    ? build_frequency(read_input(args.corpus), NormalizeOptions{})
                                    : load_frequency_argument(args.freq);
    std::optional<std::string> sample;
    if (args.sample_given) {
        sample = text_argument(args.sample);
    }
    std::cout << format_report(compare(layouts, freq, sample), format);
}

struct OptimizeArgs {
    std::string strategy;
    std::string freq;
    int groups = 8;
    int min_size = 1;
    int max_size = 5;
    std::vector<int> sizes;
    std::uint64_t seed = 1;
    std::uint64_t iterations = 20000;
    double temperature = 0.25;
    double cooling = 0.999;
    bool keep_alpha_order = false;
    std::string out;
    std::string sidecar;
    std::string format = "text";
};

std::string default_sidecar_path(const std::string& out_path) {
    if (out_path.ends_with(".json")) {
        return out_path.substr(0, out_path.size() - 5) + ".meta.json";
    }
    return out_path + ".meta.json";
}

void run_optimize(const OptimizeArgs& args) {
    const Format format = parse_format(args.format);
    const FrequencyTable freq = load_frequency_argument(args.freq);
    const std::vector<int>& sizes = args.sizes.empty() ? kDefaultGroupSizes : args.sizes;

    OptimizerResult result;
    if (args.strategy == "contiguous") {
        result = optimize_contiguous(freq, args.groups, args.min_size, args.max_size);
    } else if (args.strategy == "free") {
        result = optimize_free(freq, sizes);
    } else if (args.strategy == "anneal") {
        const Constraints constraints = args.keep_alpha_order
                                            ? Constraints::constrained(sizes, true)
                                            : Constraints::free_assignment(sizes);
        AnnealSchedule schedule;
        schedule.initial_temp = args.temperature;
        schedule.cooling = args.cooling;
        schedule.iterations = args.iterations;
        result = anneal(freq, constraints, args.seed, schedule);
    } else {
        throw UsageError("unknown strategy \"" + args.strategy +
                         "\" (expected contiguous, free or anneal)");
    }

    if (!args.out.empty()) {
        write_output(args.out, serialize_layout(result.layout));
        const std::string sidecar =
            args.sidecar.empty() ? default_sidecar_path(args.out) : args.sidecar;
        write_output(sidecar, optimizer_sidecar_json(result));
    }
    std::cout << format_report(result, format);
}

struct FreqArgs {
    std::vector<std::string> inputs;
    std::string output;
    CorpusArgs corpus_options;
};

void run_freq(const FreqArgs& args) {
    const NormalizeOptions options = normalize_options(args.corpus_options);
    std::optional<FrequencyTable> table;
    for (const std::string& input : args.inputs) {
        FrequencyTable part = build_frequency(read_input(input), options);
        if (table) {
            table = merge(*table, part);
        } else {
            table = std::move(part);
        }
    }
    write_output(args.output, serialize_frequency(*table));
}

struct LayoutsArgs {
    std::string show;
    std::string format = "text";
};

void run_layouts(const LayoutsArgs& args) {
    const Format format = parse_format(args.format);
    if (!args.show.empty()) {
        std::cout << format_report(load_layout_argument(args.show), format);
        return;
    }
    if (format == Format::Json) {
        std::cout << Json(builtin_layout_names()).dump(2) << "\n";
        return;
    }
    for (const std::string& name : builtin_layout_names()) {
        std::cout << name << "\n";
    }
}

void add_format_option(CLI::App* cmd, std::string& target) {
    cmd->add_option("--format", target, "Output format: json, text or csv")
        ->envname("TAPLAB_FORMAT");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"taplab — model and optimize multi-tap text entry on 12-key keypads"};
    app.require_subcommand(1);

    EncodeArgs encode_args;
    auto* cmd_encode = app.add_subcommand("encode", "Turn text into taps and count keystrokes");
    cmd_encode->add_option("--layout", encode_args.layout, "Builtin layout name or layout file");
    cmd_encode->add_option("--text", encode_args.text, "Text to encode ('-' reads stdin)")
        ->required();
    cmd_encode->add_option("--start-mode", encode_args.start_mode, "alpha or special");
    cmd_encode->add_option("--strategy", encode_args.strategy,
                           "Commit strategy: timeout or next-key");
    cmd_encode->add_option("--commit-key", encode_args.commit_key,
                           "Commit key for next-key (default '*')");
    cmd_encode->add_option("--plan", encode_args.plan,
                           "auto inserts optimal mode toggles; none (default) stays put");
    cmd_encode->add_option("--cost-model", encode_args.cost_model,
                           "exact or flat-digit:<k> (flat per-digit charge)");
    add_format_option(cmd_encode, encode_args.format);
    cmd_encode->callback([&] { run_encode(encode_args); });

    DecodeArgs decode_args;
    auto* cmd_decode = app.add_subcommand("decode", "Replay a tap sequence into text");
    cmd_decode->add_option("--layout", decode_args.layout, "Builtin layout name or layout file");
    cmd_decode
        ->add_option("--taps", decode_args.taps,
                     "Sequence like \"mode=alpha P2 P2 C P2\" ('-' reads stdin)")
        ->required();
    add_format_option(cmd_decode, decode_args.format);
    cmd_decode->callback([&] { run_decode(decode_args); });

    AnalyzeArgs analyze_args;
    auto* cmd_analyze =
        app.add_subcommand("analyze", "Derive letter frequencies from a corpus and cost a layout");
    cmd_analyze->add_option("--corpus", analyze_args.corpus, "Corpus file ('-' reads stdin)")
        ->required();
    cmd_analyze->add_option("--layout", analyze_args.layout, "Builtin layout name or layout file");
    cmd_analyze->add_flag("--digits", analyze_args.corpus_options.digits,
                          "Count digits beside letters");
    cmd_analyze->add_flag("--no-lowercase", analyze_args.corpus_options.no_lowercase,
                          "Keep the corpus case as-is");
    cmd_analyze->add_option("--policy", analyze_args.corpus_options.policy,
                            "Out-of-alphabet symbols: drop (default) or error");
    add_format_option(cmd_analyze, analyze_args.format);
    cmd_analyze->callback([&] { run_analyze(analyze_args); });

    CompareArgs compare_args;
    auto* cmd_compare = app.add_subcommand("compare", "Compare layouts under one distribution");
    cmd_compare->add_option("--layouts", compare_args.layouts, "Comma-separated layout names/files")
        ->required()
        ->delimiter(',');
    cmd_compare->add_option("--freq", compare_args.freq,
                            "Frequency file or the builtin uniform-letters table");
    cmd_compare->add_option("--corpus", compare_args.corpus,
                            "Corpus file to derive frequencies from");
    auto* sample_opt =
        cmd_compare->add_option("--sample", compare_args.sample, "Sample text to cost per layout");
    add_format_option(cmd_compare, compare_args.format);
    cmd_compare->callback([&] {
        compare_args.sample_given = sample_opt->count() > 0;
        run_compare(compare_args);
    });

    OptimizeArgs optimize_args;
    auto* cmd_optimize =
        app.add_subcommand("optimize", "Search layout space for minimum expected taps per letter");
    cmd_optimize->add_option("--strategy", optimize_args.strategy, "contiguous, free or anneal")
        ->required();
    cmd_optimize
        ->add_option("--freq", optimize_args.freq,
                     "Frequency file or the builtin uniform-letters table")
        ->required();
    cmd_optimize->add_option("--groups", optimize_args.groups, "contiguous: number of groups");
    cmd_optimize->add_option("--min", optimize_args.min_size, "contiguous: minimum group size");
    cmd_optimize->add_option("--max", optimize_args.max_size, "contiguous: maximum group size");
    cmd_optimize
        ->add_option("--sizes", optimize_args.sizes,
                     "free/anneal: group sizes (default 3,3,3,3,3,3,4,4)")
        ->delimiter(',');
    cmd_optimize->add_option("--seed", optimize_args.seed, "anneal: RNG seed");
    cmd_optimize->add_option("--iters", optimize_args.iterations, "anneal: iterations");
    cmd_optimize->add_option("--temp", optimize_args.temperature, "anneal: initial temperature");
    cmd_optimize->add_option("--cool", optimize_args.cooling, "anneal: geometric cooling factor");
    cmd_optimize->add_flag("--keep-alpha-order", optimize_args.keep_alpha_order,
                           "anneal: only visit assignments alphabetical within each key");
    cmd_optimize->add_option("--out", optimize_args.out, "Write the layout file here");
    cmd_optimize->add_option("--sidecar", optimize_args.sidecar,
                             "Sidecar path (default: derived from --out)");
    add_format_option(cmd_optimize, optimize_args.format);
    cmd_optimize->callback([&] { run_optimize(optimize_args); });

    FreqArgs freq_args;
    auto* cmd_freq = app.add_subcommand("freq", "Build a frequency table from corpora");
    cmd_freq
        ->add_option("--input", freq_args.inputs,
                     "Corpus file ('-' reads stdin); repeat to merge corpora")
        ->required();
    cmd_freq->add_option("--output", freq_args.output, "Frequency file to write ('-' for stdout)")
        ->required();
    cmd_freq->add_flag("--digits", freq_args.corpus_options.digits, "Count digits beside letters");
    cmd_freq->add_flag("--no-lowercase", freq_args.corpus_options.no_lowercase,
                       "Keep the corpus case as-is");
    cmd_freq->add_option("--policy", freq_args.corpus_options.policy,
                         "Out-of-alphabet symbols: drop (default) or error");
    cmd_freq->callback([&] { run_freq(freq_args); });

    LayoutsArgs layouts_args;
    auto* cmd_layouts = app.add_subcommand("layouts", "List builtin layouts");
    auto* cmd_show = cmd_layouts->add_subcommand("show", "Print one layout");
    cmd_show->add_option("name", layouts_args.show, "Builtin layout name or layout file")
        ->required();
    add_format_option(cmd_layouts, layouts_args.format);
    add_format_option(cmd_show, layouts_args.format);
    cmd_layouts->callback([&] { run_layouts(layouts_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedFormat& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
