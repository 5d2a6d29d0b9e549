#include "ringelect/cli.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace ringelect {

using nlohmann::json;

namespace {

std::size_t line_of_offset(const std::string& text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the first occurrence of "field" as a key; 0 if absent.
std::size_t line_of_key(const std::string& text, const std::string& field)
{
    const auto at = text.find("\"" + field + "\"");
    return at == std::string::npos ? 0 : line_of_offset(text, at);
}

const json& require_field(const json& obj, const std::string& field)
{
    auto it = obj.find(field);
    if (it == obj.end()) {
        throw ParseError("missing field '" + field + "'", 0, field);
    }
    return *it;
}

std::uint64_t positive_u64(const json& j, const std::string& field, std::size_t line)
{
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        return j.get<std::uint64_t>();
    }
    if (j.is_string()) {
        const std::string& digits = j.get_ref<const std::string&>();
        std::uint64_t v = 0;
        const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty()) {
            return v;
        }
    }
    throw ParseError("field '" + field + "' must hold non-negative integers", line, field);
}

std::vector<BigInt> bigint_array(const json& obj, const std::string& field, const std::string& text)
{
    const json& arr = require_field(obj, field);
    if (!arr.is_array()) {
        throw ParseError("field '" + field + "' must be an array", line_of_key(text, field), field);
    }
    std::vector<BigInt> out;
    for (const auto& v : arr) {
        out.push_back(bigint_from_json(v, field));
    }
    return out;
}

DelayPolicy parse_policy(const json& j, const std::string& text)
{
    const std::size_t line = line_of_key(text, "policy");
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw ParseError("field 'policy' must be an object with a string 'kind'", line, "policy");
    }
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "power2") {
        return Power2{};
    }
    if (kind == "relative") {
        return Relative{};
    }
    if (kind == "scaled") {
        if (!j.contains("rho_num")) {
            throw ParseError("scaled policy needs 'rho_num'", line, "policy.rho_num");
        }
        const BigInt num = bigint_from_json(j["rho_num"], "policy.rho_num");
        const BigInt den = j.contains("rho_den") ? bigint_from_json(j["rho_den"], "policy.rho_den") : BigInt(1);
        if (den <= 0 || num <= 0) {
            throw ParseError("scaled policy needs positive rho_num and rho_den", line, "policy");
        }
        return ScaledPower{Rational(num, den)};
    }
    if (kind == "table") {
        if (!j.contains("map") || !j["map"].is_object()) {
            throw ParseError("table policy needs an object 'map' from name to ticks", line, "policy.map");
        }
        Table t;
        for (const auto& [key, value] : j["map"].items()) {
            if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos) {
                throw ParseError("table key '" + key + "' is not a name", line, "policy.map");
            }
            t.ticks[Name(std::stoull(key))] = bigint_from_json(value, "policy.map");
        }
        return t;
    }
    throw ParseError("unknown policy kind '" + kind + "'", line, "policy.kind");
}

json policy_to_json(const DelayPolicy& policy)
{
    json j;
    j["kind"] = policy_kind_name(policy);
    if (const auto* sp = std::get_if<ScaledPower>(&policy)) {
        j["rho_num"] = bigint_to_json(boost::multiprecision::numerator(sp->rho));
        j["rho_den"] = bigint_to_json(boost::multiprecision::denominator(sp->rho));
    } else if (const auto* t = std::get_if<Table>(&policy)) {
        json map = json::object();
        for (const auto& [name, ticks] : t->ticks) {
            map[std::to_string(name.value)] = bigint_to_json(ticks);
        }
        j["map"] = map;
    }
    return j;
}

json optional_rational(const std::optional<Rational>& r) { return r ? rational_to_json(*r) : json(nullptr); }

json optional_flag(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << content;
}

std::vector<std::size_t> parse_n_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("--n-list expects comma-separated integers, got '" + text + "'");
        }
        out.push_back(static_cast<std::size_t>(std::stoull(item)));
    }
    if (out.empty()) {
        throw std::invalid_argument("--n-list is empty");
    }
    return out;
}

std::string render_bounds_text(const BoundReport& r)
{
    std::vector<std::pair<std::string, std::optional<Rational>>> rows = {
        {"eq2_total", r.eq2_total},
        {"eq2_closed", r.eq2_closed},
        {"eq3_bits", r.eq3_bits},
        {"eq4_total", r.eq4_total},
        {"split_total", r.split ? std::optional<Rational>(r.split->total) : std::nullopt},
        {"split_closed", r.split ? std::optional<Rational>(r.split->closed) : std::nullopt},
        {"eq5_expected", r.eq5_expected},
        {"time_abs", r.time.time_abs},
        {"time_walk", r.time.time_walk},
        {"time_relative_circle", r.time.time_relative_circle},
        {"time_relative_total", r.time.time_relative_total},
    };
    if (r.eq1_per_origin) {
        for (const auto& [name, value] : *r.eq1_per_origin) {
            rows.emplace_back("eq1[" + std::to_string(name.value) + "]", value);
        }
    }
    std::ostringstream os;
    os << "N=" << r.n << " l=" << r.l << " policy=" << r.policy << " m=" << r.params.m << " u'=" << r.params.u_clock
       << " u=" << r.params.u << " s=" << r.params.s << " eps=" << r.params.epsilon << " w_p=" << r.params.w_p
       << " w_s=" << r.params.w_s << " w=" << r.params.w << "\n";
    for (const auto& [label, value] : rows) {
        os << std::left << std::setw(22) << label;
        if (value) {
            os << std::setw(28) << to_fraction_string(*value) << to_decimal_string(*value);
        } else {
            os << "n/a";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::string field)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line),
      field_(std::move(field))
{
}

json bigint_to_json(const BigInt& v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return json(static_cast<std::int64_t>(v));
    }
    return json(v.str());
}

BigInt bigint_from_json(const json& j, const std::string& field)
{
    if (j.is_number_unsigned()) {
        return BigInt(j.get<std::uint64_t>());
    }
    if (j.is_number_integer()) {
        return BigInt(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) {
            return BigInt(s);
        }
    }
    throw ParseError("field '" + field + "' must hold integers (JSON numbers or decimal strings)", 0, field);
}

json rational_to_json(const Rational& r)
{
    return json{{"exact", to_fraction_string(r)}, {"decimal", to_decimal_string(r)}};
}

Scenario parse_scenario(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
    }
    if (!doc.is_object()) {
        throw ParseError("scenario must be a JSON object", 1);
    }

    Scenario sc;
    RingConfig& c = sc.config;

    const json& names = require_field(doc, "names");
    if (!names.is_array()) {
        throw ParseError("field 'names' must be an array", line_of_key(text, "names"), "names");
    }
    for (const auto& n : names) {
        c.names.emplace_back(positive_u64(n, "names", line_of_key(text, "names")));
    }
    c.tick_len = bigint_array(doc, "tick_len", text);
    c.link_delay = bigint_array(doc, "link_delay", text);

    for (const char* field : {"tick_len", "link_delay"}) {
        const std::size_t len = std::string(field) == "tick_len" ? c.tick_len.size() : c.link_delay.size();
        if (len != c.names.size()) {
            throw ParseError("field '" + std::string(field) + "' has " + std::to_string(len) +
                                 " entries but 'names' has " + std::to_string(c.names.size()),
                             line_of_key(text, field), field);
        }
    }

    const json& wake = require_field(doc, "wake");
    if (!wake.is_array()) {
        throw ParseError("field 'wake' must be an array", line_of_key(text, "wake"), "wake");
    }
    for (const auto& w : wake) {
        if (!w.is_object() || !w.contains("pos") || !w.contains("time")) {
            throw ParseError("each wake entry needs 'pos' and 'time'", line_of_key(text, "wake"), "wake");
        }
        c.wake.push_back({static_cast<std::size_t>(positive_u64(w["pos"], "wake.pos", line_of_key(text, "wake"))),
                          bigint_from_json(w["time"], "wake.time")});
    }

    c.policy = parse_policy(require_field(doc, "policy"), text);

    if (auto it = doc.find("declared_s"); it != doc.end() && !it->is_null()) {
        sc.declared_s = bigint_from_json(*it, "declared_s");
    }

    require_valid(c, sc.declared_s);
    return sc;
}

json scenario_to_json(const Scenario& scenario)
{
    const RingConfig& c = scenario.config;
    json j;
    j["names"] = json::array();
    for (Name n : c.names) {
        j["names"].push_back(n.value);
    }
    j["tick_len"] = json::array();
    for (const auto& t : c.tick_len) {
        j["tick_len"].push_back(bigint_to_json(t));
    }
    j["link_delay"] = json::array();
    for (const auto& d : c.link_delay) {
        j["link_delay"].push_back(bigint_to_json(d));
    }
    j["wake"] = json::array();
    for (const auto& w : c.wake) {
        j["wake"].push_back({{"pos", w.pos}, {"time", bigint_to_json(w.time)}});
    }
    j["policy"] = policy_to_json(c.policy);
    if (scenario.declared_s) {
        j["declared_s"] = bigint_to_json(*scenario.declared_s);
    }
    return j;
}

std::string scenario_digest(const Scenario& scenario)
{
    const std::string canonical = scenario_to_json(scenario).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

json outcome_to_json(const Outcome& o)
{
    json j;
    j["winner"] = o.winner.value;
    j["passes"] = {{"wakeup", o.passes.wakeup},
                   {"election", o.passes.election},
                   {"sleepwell", o.passes.sleepwell},
                   {"total", o.passes.total()}};
    json by_origin = json::object();
    for (const auto& [name, count] : o.election_passes_by_origin) {
        by_origin[std::to_string(name.value)] = count;
    }
    j["election_passes_by_origin"] = by_origin;
    j["bits"] = {{"framing", o.bits.framing}, {"payload", o.bits.payload}, {"total", o.bits.total()}};
    j["first_wake"] = bigint_to_json(o.first_wake);
    j["completion"] = bigint_to_json(o.completion);
    j["ticks_elapsed"] = json::array();
    for (const auto& t : o.ticks_elapsed) {
        j["ticks_elapsed"].push_back(bigint_to_json(t));
    }
    j["winner_circuit_ticks"] = bigint_to_json(o.winner_circuit_ticks());
    j["winner_circle_time"] = bigint_to_json(o.winner_circle_time());
    j["overtakes"] = o.overtakes;
    j["max_readable_backlog"] = o.max_readable_backlog;
    j["events"] = o.events;
    return j;
}

json bound_report_to_json(const BoundReport& r)
{
    json j;
    j["n"] = r.n;
    j["l"] = r.l.value;
    j["policy"] = r.policy;
    j["params"] = {{"m", bigint_to_json(r.params.m)},         {"u_clock", bigint_to_json(r.params.u_clock)},
                   {"u", bigint_to_json(r.params.u)},         {"s", bigint_to_json(r.params.s)},
                   {"epsilon", bigint_to_json(r.params.epsilon)}, {"w_p", bigint_to_json(r.params.w_p)},
                   {"w_s", bigint_to_json(r.params.w_s)},     {"w", bigint_to_json(r.params.w)}};
    if (r.eq1_per_origin) {
        json per = json::object();
        for (const auto& [name, value] : *r.eq1_per_origin) {
            per[std::to_string(name.value)] = rational_to_json(value);
        }
        j["eq1_per_origin"] = per;
    } else {
        j["eq1_per_origin"] = nullptr;
    }
    j["eq2_total"] = optional_rational(r.eq2_total);
    j["eq2_closed"] = optional_rational(r.eq2_closed);
    j["eq3_bits"] = optional_rational(r.eq3_bits);
    j["eq4_total"] = optional_rational(r.eq4_total);
    j["split_total"] = optional_rational(r.split ? std::optional<Rational>(r.split->total) : std::nullopt);
    j["split_closed"] = optional_rational(r.split ? std::optional<Rational>(r.split->closed) : std::nullopt);
    j["eq5_expected"] = optional_rational(r.eq5_expected);
    j["time_abs"] = rational_to_json(r.time.time_abs);
    j["time_walk"] = rational_to_json(r.time.time_walk);
    j["time_relative_circle"] = rational_to_json(r.time.time_relative_circle);
    j["time_relative_total"] = rational_to_json(r.time.time_relative_total);
    return j;
}

json bound_checks(const RingConfig& config, const Outcome& o, const BoundReport& r)
{
    const Rational total(o.passes.total());
    auto within = [&](const std::optional<Rational>& bound, const Rational& value) -> std::optional<bool> {
        if (!bound) {
            return std::nullopt;
        }
        return value <= *bound;
    };

    std::optional<bool> eq1_slack;
    if (r.eq1_per_origin) {
        eq1_slack = true;
        for (const auto& [name, bound] : *r.eq1_per_origin) {
            if (name == r.l) {
                continue;
            }
            auto it = o.election_passes_by_origin.find(name);
            const std::uint64_t passes = it == o.election_passes_by_origin.end() ? 0 : it->second;
            if (BigInt(passes) > 2 * ceil(bound)) {
                eq1_slack = false;
            }
        }
    }
    const Rational span(o.completion - o.first_wake);
    (void)config;

    json j;
    j["eq1_per_origin_slack2"] = optional_flag(eq1_slack);
    j["eq2_total"] = optional_flag(within(r.eq2_total, total));
    j["eq2_closed"] = optional_flag(within(r.eq2_closed, total));
    j["eq3_bits"] = optional_flag(within(r.eq3_bits, Rational(o.bits.total())));
    j["eq4_total"] = optional_flag(within(r.eq4_total, total));
    j["split_total"] = optional_flag(within(r.split ? std::optional<Rational>(r.split->total) : std::nullopt, total));
    j["time_abs"] = span <= r.time.time_abs;
    j["time_abs_slack2"] = span <= 2 * r.time.time_abs;
    j["winner_is_min"] = o.winner == config.min_name();
    return j;
}

json make_result_record(const Scenario& scenario, std::optional<std::uint64_t> seed, const Outcome& outcome)
{
    const BoundReport report = make_bound_report(scenario.config);
    json j;
    j["digest"] = scenario_digest(scenario);
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["scenario"] = scenario_to_json(scenario);
    j["outcome"] = outcome_to_json(outcome);
    j["bounds"] = bound_report_to_json(report);
    j["checks"] = bound_checks(scenario.config, outcome, report);
    return j;
}

bool verify_record(const json& record, std::string& mismatch)
{
    if (!record.is_object() || !record.contains("scenario") || !record.contains("outcome")) {
        throw ParseError("record needs 'scenario' and 'outcome'");
    }
    const Scenario sc = parse_scenario(record["scenario"].dump());
    if (record.contains("digest") && record["digest"] != scenario_digest(sc)) {
        mismatch = "digest";
        return false;
    }
    const json replay = outcome_to_json(run_election(sc.config));
    const json& stored = record["outcome"];
    for (const auto& [key, value] : replay.items()) {
        if (!stored.contains(key) || stored[key] != value) {
            mismatch = key;
            return false;
        }
    }
    mismatch.clear();
    return true;
}

std::string average_csv(const ExperimentStats& stats)
{
    std::ostringstream os;
    os << kAverageCsvHeader << "\n";
    for (const auto& t : stats.per_trial) {
        os << t.index << ',' << t.seed << ',' << stats.n << ',' << t.winner << ',' << t.election_passes << ','
           << t.total_passes << ',' << t.bits << ',';
        if (t.eq5_bound) {
            os << to_fraction_string(*t.eq5_bound) << ',' << to_decimal_string(*t.eq5_bound) << ','
               << (t.within_eq5 ? "true" : "false");
        } else {
            os << ",,";
        }
        os << "\n";
    }
    return os.str();
}

std::string compare_csv(const std::vector<CompareRow>& rows, std::size_t trials)
{
    std::ostringstream os;
    os << kCompareCsvHeader << "\n";
    for (const auto& r : rows) {
        os << r.n << ',' << trials << ',' << to_decimal_string(r.mean_power2) << ','
           << to_decimal_string(r.mean_relative) << ',' << to_decimal_string(r.mean_filter) << ','
           << to_decimal_string(r.mean_eq5) << ',' << to_decimal_string(r.per_n(r.mean_power2)) << ','
           << to_decimal_string(r.per_n(r.mean_relative)) << ',' << to_decimal_string(r.per_n(r.mean_filter)) << ','
           << to_fraction_string(r.mean_power2) << ',' << to_fraction_string(r.mean_relative) << ','
           << to_fraction_string(r.mean_filter) << ',' << to_fraction_string(r.mean_eq5) << "\n";
    }
    return os.str();
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Clock-based ring election simulator and bound calculator", "ringelect"};
    app.require_subcommand(1);

    std::string config_path, out_path, verify_path, format = "json", policy = "power2", n_list;
    bool trace = false, timing = false;
    std::size_t n = 0, trials = 0;
    std::uint64_t seed = 0, delta = 0;
    unsigned threads = 0;

    auto* simulate = app.add_subcommand("simulate", "run one election from a scenario file");
    simulate->add_option("--config", config_path, "scenario JSON");
    simulate->add_option("--verify", verify_path, "replay a result record and compare counters");
    simulate->add_flag("--trace", trace, "print the event trace");
    simulate->add_flag("--timing", timing, "add wall-clock duration to the record");
    simulate->add_option("--out", out_path, "write the result record here");

    auto* adversary = app.add_subcommand("adversary", "run the adversarial-clock worst case");
    adversary->add_option("--n", n, "ring size")->required()->check(CLI::Range(2, 4096));
    adversary->add_flag("--trace", trace, "print the event trace");
    adversary->add_option("--out", out_path, "write the result record here");

    auto* average = app.add_subcommand("average", "random-permutation lockstep trials");
    average->add_option("--n", n, "ring size")->required()->check(CLI::Range(2, 4096));
    average->add_option("--trials", trials, "number of trials")->required()->check(CLI::Range(1, 10000000));
    average->add_option("--seed", seed, "64-bit seed")->required();
    average->add_option("--policy", policy, "power2 | scaled | relative")
        ->check(CLI::IsMember({"power2", "scaled", "relative"}));
    average->add_option("--delta", delta, "common link delay");
    average->add_option("--threads", threads, "worker threads (0 = all cores)");
    average->add_option("--out", out_path, "write the CSV here");

    auto* compare = app.add_subcommand("compare", "clocked protocol vs relative policy vs filter baseline");
    compare->add_option("--n-list", n_list, "comma-separated ring sizes")->required();
    compare->add_option("--trials", trials, "trials per ring size")->required()->check(CLI::Range(1, 10000000));
    compare->add_option("--seed", seed, "64-bit seed")->required();
    compare->add_option("--threads", threads, "worker threads (0 = all cores)");
    compare->add_option("--out", out_path, "write the CSV here");

    auto* bounds = app.add_subcommand("bounds", "evaluate every analytic bound for a scenario");
    bounds->add_option("--config", config_path, "scenario JSON")->required();
    bounds->add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));

    auto* ringsize = app.add_subcommand("ringsize", "recover N from the winner's tick count (lockstep only)");
    ringsize->add_option("--config", config_path, "scenario JSON")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return kExitConfig;
    }

    auto emit = [&](const std::string& content) {
        if (out_path.empty()) {
            out << content;
        } else {
            write_file(out_path, content);
        }
    };

    try {
        if (*simulate) {
            if (config_path.empty() == verify_path.empty()) {
                err << "simulate needs exactly one of --config or --verify\n" << simulate->help();
                return kExitConfig;
            }
            if (!verify_path.empty()) {
                std::string mismatch;
                const json record = json::parse(read_file(verify_path));
                if (verify_record(record, mismatch)) {
                    out << "verified " << record.value("digest", std::string("?")) << "\n";
                    return kExitOk;
                }
                err << "replay differs from the record at '" << mismatch << "'\n";
                return kExitFault;
            }
            const Scenario sc = parse_scenario(read_file(config_path));
            const auto start = std::chrono::steady_clock::now();
            const Outcome o = run_election(sc.config, {Strategy::Clocked, trace});
            const auto elapsed = std::chrono::steady_clock::now() - start;
            for (const auto& line : o.trace) {
                out << line << "\n";
            }
            json record = make_result_record(sc, std::nullopt, o);
            if (timing) {
                record["wall_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
            }
            emit(record.dump(2) + "\n");
        } else if (*adversary) {
            const Scenario sc{adversarial_config(n), std::nullopt};
            const Outcome o = run_election(sc.config, {Strategy::Clocked, trace});
            for (const auto& line : o.trace) {
                out << line << "\n";
            }
            emit(make_result_record(sc, std::nullopt, o).dump(2) + "\n");
            if (!out_path.empty()) {
                out << "N=" << n << " election_passes=" << o.passes.election << " overtakes=" << o.overtakes << "\n";
            }
        } else if (*average) {
            const auto stats = average_case_experiment(n, trials, seed, parse_policy_choice(policy), delta, threads);
            emit(average_csv(stats));
            if (!out_path.empty()) {
                out << "N=" << n << " trials=" << trials << " policy=" << policy
                    << " mean_election=" << to_decimal_string(stats.mean_election)
                    << " mean_total=" << to_decimal_string(stats.mean_total)
                    << " mean_bits=" << to_decimal_string(stats.mean_bits) << "\n";
            }
        } else if (*compare) {
            const auto rows = compare_protocols(parse_n_list(n_list), trials, seed, threads);
            emit(compare_csv(rows, trials));
        } else if (*bounds) {
            const Scenario sc = parse_scenario(read_file(config_path));
            const BoundReport report = make_bound_report(sc.config);
            out << (format == "text" ? render_bounds_text(report) : bound_report_to_json(report).dump(2) + "\n");
        } else if (*ringsize) {
            const Scenario sc = parse_scenario(read_file(config_path));
            const Outcome o = run_election(sc.config);
            out << ring_size_from_outcome(sc.config, o) << "\n";
        }
    } catch (const InvariantFault& e) {
        err << e.what() << "\n";
        return kExitFault;
    } catch (const ExperimentError& e) {
        err << e.what() << "\n";
        return kExitFault;
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitConfig;
    } catch (const json::exception& e) {
        err << "malformed JSON: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}

}  // namespace ringelect
