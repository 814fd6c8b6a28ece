#include "qreg/cli.hpp"

#include "qreg/certificate.hpp"
#include "qreg/metric.hpp"
#include "qreg/oracle.hpp"
#include "qreg/proof.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace qreg::cli {

namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string lambda = "1/2";
    std::string alphabet;
};

Config make_config(const std::string& text)
{
    try {
        return Config(parse_rational(text));
    } catch (const std::invalid_argument& ex) {
        throw InputError(std::string("bad --lambda: ") + ex.what());
    }
}

std::optional<Alphabet> make_alphabet(const std::string& letters)
{
    if (letters.empty())
        return std::nullopt;
    try {
        return Alphabet(letters);
    } catch (const std::invalid_argument& ex) {
        throw InputError(std::string("bad --alphabet: ") + ex.what());
    }
}

Regex parse_expr(const std::string& text, const std::optional<Alphabet>& alphabet)
{
    try {
        return alphabet ? parse(text, *alphabet) : parse(text);
    } catch (const ParseError& ex) {
        throw InputError("cannot parse '" + text + "': " + ex.what());
    }
}

std::string show_word(const Word& w)
{
    return "\"" + w + "\"";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw InputError("cannot write " + path);
    file << content;
}

// ---------------------------------------------------------------------------

struct DistOptions {
    std::string left, right;
    bool verify = false;
    bool trace = false;
    bool as_json = false;
    std::string dot;
};

int cmd_dist(const Common& common, const DistOptions& opt, std::ostream& out, std::ostream& err)
{
    const Config cfg = make_config(common.lambda);
    const auto given = make_alphabet(common.alphabet);
    const Regex e = parse_expr(opt.left, given);
    const Regex f = parse_expr(opt.right, given);
    const Alphabet alphabet = given ? *given : infer_alphabet(e, f);

    const auto t0 = std::chrono::steady_clock::now();
    const DistanceResult r = distance(e, f, alphabet, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::optional<Rational> brute;
    if (opt.verify) {
        // Letters outside e and f cannot distinguish them.
        brute = brute_distance(e, f, r.product_pairs, cfg);
        if (*brute != r.rational) {
            err << "verify mismatch: fixpoint gives " << to_string(r.rational) << ", enumeration gives "
                << to_string(*brute) << "\n";
            return kVerifyMismatch;
        }
    }

    std::vector<Rational> trace;
    std::optional<QuotientAutomaton> aut;
    if (opt.trace || !opt.dot.empty())
        aut = build({e, f}, alphabet);
    if (opt.trace) {
        const Descent descent = kleene_descent(*aut);
        for (const auto& table : descent.trace)
            trace.push_back(table.get(aut->roots()[0], aut->roots()[1]).value(cfg));
        trace.push_back(descent.fixpoint.get(aut->roots()[0], aut->roots()[1]).value(cfg));
    }
    if (!opt.dot.empty())
        write_output(opt.dot, to_dot(*aut), out);

    const std::string witness = r.witness ? *r.witness : "-";
    if (opt.as_json) {
        json doc{{"left", opt.left},
                 {"right", opt.right},
                 {"lambda", to_string(cfg.lambda())},
                 {"distance", to_string(r.rational)},
                 {"decimal", to_decimal(r.rational)},
                 {"witness", witness},
                 {"iterations", r.iterations},
                 {"states", r.states},
                 {"pairs", r.product_pairs},
                 {"time_ms", ms}};
        if (brute)
            doc["verified"] = true;
        if (opt.trace) {
            json t = json::array();
            for (const auto& v : trace)
                t.push_back(to_string(v));
            doc["trace"] = t;
        }
        out << doc.dump(2) << "\n";
        return kOk;
    }

    out << "left:       " << opt.left << "\n"
        << "right:      " << opt.right << "\n"
        << "lambda:     " << to_string(cfg.lambda()) << "\n"
        << "distance:   " << to_string(r.rational) << " (" << to_decimal(r.rational) << ")\n"
        << "witness:    " << (r.witness ? show_word(*r.witness) : "-") << "\n"
        << "iterations: " << r.iterations << "\n"
        << "states:     " << r.states << "\n"
        << "pairs:      " << r.product_pairs << "\n"
        << "time:       " << std::fixed << std::setprecision(3) << ms << " ms\n";
    out.unsetf(std::ios::floatfield);
    if (brute)
        out << "verified:   yes\n";
    if (opt.trace) {
        out << "trace:\n";
        for (std::size_t i = 0; i + 1 < trace.size(); ++i)
            out << "  " << i << ": " << to_string(trace[i]) << "\n";
        out << "  fixpoint: " << to_string(trace.back()) << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct ProveOptions {
    std::string left, right, eps;
    bool tight = false;
    std::string output;
};

int cmd_prove(const Common& common, const ProveOptions& opt, std::ostream& out, std::ostream& err)
{
    const Config cfg = make_config(common.lambda);
    const auto given = make_alphabet(common.alphabet);
    const Regex e = parse_expr(opt.left, given);
    const Regex f = parse_expr(opt.right, given);

    Rational eps;
    if (opt.tight) {
        if (!opt.eps.empty())
            throw InputError("give either an epsilon or --tight, not both");
        eps = distance(e, f, cfg).rational;
    } else {
        if (opt.eps.empty())
            throw InputError("missing epsilon (or use --tight)");
        try {
            eps = parse_rational(opt.eps);
        } catch (const RationalFormatError& ex) {
            throw InputError(std::string("bad epsilon: ") + ex.what());
        }
        if (eps < 0)
            throw InputError("epsilon must be nonnegative");
    }

    auto result = prove(e, f, eps, cfg);
    if (auto* refusal = std::get_if<Refusal>(&result)) {
        err << "refused: distance " << to_string(refusal->distance) << " exceeds epsilon " << to_string(eps)
            << "; witness " << (refusal->witness ? show_word(*refusal->witness) : "-") << "\n";
        return kRefused;
    }
    write_output(opt.output, serialize(std::get<Certificate>(result)) + "\n", out);
    return kOk;
}

// ---------------------------------------------------------------------------

struct CheckOptionsCli {
    std::string file;
    unsigned k_spot = 8;
};

int cmd_check(const CheckOptionsCli& opt, std::ostream& out, std::ostream& err)
{
    Certificate cert = [&] {
        try {
            return deserialize(read_file(opt.file));
        } catch (const CertificateFormatError& ex) {
            throw InputError(std::string("malformed certificate: ") + ex.what());
        }
    }();
    CheckOptions options;
    options.k_spot = opt.k_spot;
    CheckResult r = check(cert, options);
    if (!r.ok) {
        err << "check failed at " << r.path;
        if (r.rule)
            err << " (" << rule_name(*r.rule) << ")";
        err << ": " << r.message << "\n";
        return kRefused;
    }
    out << "ok: " << to_string(cert.root.conclusion()) << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------

struct BatchOptions {
    std::string file;
    unsigned threads = 0;
    std::string output;
};

std::string tsv_field(std::string s)
{
    std::replace(s.begin(), s.end(), '\t', ' ');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

int cmd_batch(const Common& common, const BatchOptions& opt, std::ostream& out)
{
    const Config cfg = make_config(common.lambda);
    const auto given = make_alphabet(common.alphabet);
    const std::string content = read_file(opt.file);

    std::vector<std::string> lines;
    {
        std::istringstream in(content);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (!line.empty())
                lines.push_back(line);
        }
    }

    struct Row {
        std::string left, right, distance, witness, error;
    };
    std::vector<Row> rows(lines.size());
    auto work = [&](std::size_t i) {
        Row& row = rows[i];
        const std::string& line = lines[i];
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            row.left = line;
            row.error = "expected two tab-separated expressions";
            return;
        }
        row.left = line.substr(0, tab);
        row.right = line.substr(tab + 1);
        try {
            const Regex e = parse_expr(row.left, given);
            const Regex f = parse_expr(row.right, given);
            const DistanceResult r =
                given ? distance(e, f, *given, cfg) : distance(e, f, cfg);
            row.distance = to_string(r.rational);
            row.witness = r.witness ? show_word(*r.witness) : "-";
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
    };

    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, rows.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < rows.size(); i = next++)
                work(i);
        });
    for (auto& th : pool)
        th.join();

    std::ostringstream report;
    bool failed = false;
    for (const Row& row : rows) {
        report << tsv_field(row.left) << '\t' << tsv_field(row.right) << '\t' << row.distance << '\t' << row.witness
               << '\t' << tsv_field(row.error) << '\n';
        failed = failed || !row.error.empty();
    }
    write_output(opt.output, report.str(), out);
    return failed ? kRefused : kOk;
}

// ---------------------------------------------------------------------------

struct NfOptions {
    std::string expr;
    std::string output;
};

int cmd_nf(const Common& common, const NfOptions& opt, std::ostream& out)
{
    const Config cfg = make_config(common.lambda);
    const auto given = make_alphabet(common.alphabet);
    const Regex e = parse_expr(opt.expr, given);
    const Alphabet alphabet = given ? *given : infer_alphabet(e, e);
    Derivation d = normal_form_proof(e, alphabet);
    out << print(e) << " ==_0 " << print(d.conclusion().right) << "\n";
    Certificate cert{cfg.lambda(), {}, d};
    if (opt.output.empty())
        out << serialize(cert) << "\n";
    else
        write_output(opt.output, serialize(cert) + "\n", out);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Discounted shortest-distinguishing-word distance between regular expressions", "qreg"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&common](CLI::App* sub, bool with_alphabet = true) {
        sub->add_option("--lambda", common.lambda, "discount factor p/q or decimal in (0,1)")
            ->capture_default_str();
        if (with_alphabet)
            sub->add_option("--alphabet", common.alphabet, "letters to use (default: letters of the inputs)");
    };

    DistOptions dist;
    auto* dist_cmd = app.add_subcommand("dist", "distance and shortest distinguishing word");
    dist_cmd->add_option("left", dist.left)->required();
    dist_cmd->add_option("right", dist.right)->required();
    add_common(dist_cmd);
    dist_cmd->add_flag("--verify", dist.verify, "cross-check against word enumeration");
    dist_cmd->add_flag("--trace", dist.trace, "print the descent at the root pair");
    dist_cmd->add_option("--dot", dist.dot, "write the automaton as Graphviz");
    dist_cmd->add_flag("--json", dist.as_json, "JSON report");

    ProveOptions prove_opt;
    auto* prove_cmd = app.add_subcommand("prove", "synthesize a certificate for left ==_eps right");
    prove_cmd->add_option("left", prove_opt.left)->required();
    prove_cmd->add_option("right", prove_opt.right)->required();
    prove_cmd->add_option("eps", prove_opt.eps, "p/q or decimal");
    prove_cmd->add_flag("--tight", prove_opt.tight, "use the exact distance as epsilon");
    prove_cmd->add_option("-o,--output", prove_opt.output, "certificate file (default: stdout)");
    add_common(prove_cmd);

    CheckOptionsCli check_opt;
    auto* check_cmd = app.add_subcommand("check", "validate a certificate");
    check_cmd->add_option("file", check_opt.file)->required();
    check_cmd->add_option("--k-spot", check_opt.k_spot, "template indices checked")->capture_default_str();

    BatchOptions batch;
    auto* batch_cmd = app.add_subcommand("batch", "distances for tab-separated pairs, one per line");
    batch_cmd->add_option("file", batch.file)->required();
    batch_cmd->add_option("-j,--threads", batch.threads, "worker threads (default: all cores)");
    batch_cmd->add_option("-o,--output", batch.output, "report file (default: stdout)");
    add_common(batch_cmd);

    NfOptions nf;
    auto* nf_cmd = app.add_subcommand("nf", "fundamental decomposition with its certificate");
    nf_cmd->add_option("expr", nf.expr)->required();
    nf_cmd->add_option("-o,--output", nf.output, "certificate file (default: stdout)");
    add_common(nf_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        int code = app.exit(ex, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (dist_cmd->parsed())
            return cmd_dist(common, dist, out, err);
        if (prove_cmd->parsed())
            return cmd_prove(common, prove_opt, out, err);
        if (check_cmd->parsed())
            return cmd_check(check_opt, out, err);
        if (batch_cmd->parsed())
            return cmd_batch(common, batch, out);
        if (nf_cmd->parsed())
            return cmd_nf(common, nf, out);
    } catch (const InputError& ex) {
        err << "error: " << ex.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << "\n";
        return kInputError;
    } catch (const StateLimitExceeded& ex) {
        err << "error: " << ex.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

} // namespace qreg::cli
