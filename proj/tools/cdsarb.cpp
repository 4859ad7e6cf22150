// cdsarb command-line scanner: ingest CDS quote files, run the no-arbitrage
// checks, bootstrap hazards, and replay the paired arbitrage strategy.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <cdsarb/cdsarb.hpp>

namespace {

using namespace cdsarb;

std::vector<std::pair<Tenor, Tenor>> parse_pairs(const std::string& spec) {
    std::vector<std::pair<Tenor, Tenor>> pairs;
    std::string token;
    std::stringstream ss(spec);
    while (std::getline(ss, token, ',')) {
        const auto colon = token.find(':');
        if (colon == std::string::npos)
            throw UsageError("bad pair '" + token + "', expected T1:T2");
        pairs.emplace_back(Tenor::parse(token.substr(0, colon)),
                           Tenor::parse(token.substr(colon + 1)));
    }
    if (pairs.empty())
        throw UsageError("empty pair list");
    return pairs;
}

std::set<std::string> parse_id_list(const std::string& spec) {
    std::set<std::string> ids;
    std::string token;
    std::stringstream ss(spec);
    while (std::getline(ss, token, ','))
        if (!token.empty())
            ids.insert(token);
    return ids;
}

void print_diagnostics(const IngestResult& ingest) {
    for (const auto& d : ingest.diagnostics)
        std::cerr << "line " << d.line << ": " << d.message << "\n";
}

int run_scan(const std::string& input, const std::string& pairs_spec,
             const std::string& condition_name, const std::string& discount_path,
             const std::string& irs_path, double t0, double epsilon_bp_years,
             const std::string& exclude_spec, const std::string& report_path,
             const std::string& format_name, const std::string& plot_dir,
             bool fail_on_anomaly, int freq) {
    ScanOptions options;
    if (condition_name == "thm1")
        options.condition = AoACondition::thm1;
    else if (condition_name == "thm2")
        options.condition = AoACondition::thm2;
    else if (condition_name == "thm3")
        options.condition = AoACondition::thm3;
    else if (condition_name == "irs")
        options.condition = AoACondition::irs_corollary;
    else
        throw UsageError("unknown condition '" + condition_name + "'");
    options.payments_per_year = freq;
    options.epsilon = epsilon_bp_years * 1e-4;

    if (!discount_path.empty())
        options.discount = load_discount_csv(discount_path);
    else if (options.condition != AoACondition::thm1)
        options.discount = DiscountCurve::flat(0.0); // zero rates unless told otherwise
    if (!irs_path.empty())
        options.irs = load_irs_csv(irs_path, t0);

    const auto ingest = ingest_csv_file(input);
    print_diagnostics(ingest);

    const auto pairs = parse_pairs(pairs_spec);
    const auto report = scan(ingest.curves, pairs, options);
    const auto exclude = parse_id_list(exclude_spec);

    if (!report_path.empty()) {
        emit_report(report,
                    format_name == "csv" ? ReportFormat::csv : ReportFormat::json,
                    report_path, exclude);
    } else {
        std::cout << render_report_json(report, exclude);
    }

    if (!plot_dir.empty()) {
        std::filesystem::create_directories(plot_dir);
        {
            std::ofstream out(std::filesystem::path(plot_dir) / "monthly_counts.csv",
                              std::ios::binary);
            out << "month,count,roll_month\n";
            for (const auto& m : aggregate_monthly(report))
                out << m.month << "," << m.count << "," << (m.roll_month ? 1 : 0) << "\n";
        }
        for (const auto& r : report.records) {
            for (const auto& curve : ingest.curves) {
                if (curve.as_of() == r.as_of &&
                    curve.entity().entity_id == r.entity.entity_id) {
                    const auto series = hyperbola_plot_data(curve, r.tenor_short);
                    const auto name = "hyperbola_" + r.entity.entity_id + "_" +
                                      r.as_of.iso() + "_" + r.tenor_short.str() + "x" +
                                      r.tenor_long.str() + ".csv";
                    write_plot_csv(series, (std::filesystem::path(plot_dir) / name).string());
                    break;
                }
            }
        }
    }

    std::cerr << "scanned " << report.curves_scanned << " curves, found "
              << report.total() << " anomalies (" << report.pairs_skipped
              << " pairs skipped)\n";
    return (fail_on_anomaly && report.total() > 0) ? 1 : 0;
}

int run_gen(std::uint64_t seed, long curves, long violations, const std::string& out_path,
            const std::string& manifest_path) {
    const auto ds = generate_dataset(seed, curves, violations);
    {
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw Error("cannot open '" + out_path + "'");
        out << to_quote_csv(ds.curves);
    }
    if (!manifest_path.empty()) {
        nlohmann::json manifest;
        manifest["seed"] = seed;
        manifest["curves"] = curves;
        manifest["violations"] = violations;
        nlohmann::json counts;
        counts["total"] = long(ds.planted.size());
        for (const char* key : {"pair", "month", "rating", "region", "sector", "currency",
                                "seniority"})
            for (const auto& [k, v] : count_records_by(ds.planted, key))
                counts[std::string("by_") + key][k] = v;
        manifest["counts"] = counts;
        nlohmann::json planted = nlohmann::json::array();
        for (const auto& p : ds.planted) {
            nlohmann::json row;
            row["as_of"] = p.as_of.iso();
            row["entity_id"] = p.entity.entity_id;
            row["t1"] = p.tenor_short.years();
            row["t2"] = p.tenor_long.years();
            row["mar"] = p.mar;
            row["rating"] = to_string(p.entity.rating);
            planted.push_back(row);
        }
        manifest["planted"] = planted;
        std::ofstream out(manifest_path, std::ios::binary);
        if (!out)
            throw Error("cannot open '" + manifest_path + "'");
        out << manifest.dump(2) << "\n";
    }
    std::cerr << "wrote " << curves << " curves (" << violations << " planted) to "
              << out_path << "\n";
    return 0;
}

int run_replay(const std::string& input, const std::string& entity_id,
               const std::string& inception_str, const std::string& short_tenor_str,
               const std::string& long_tenor_str, double notional, double recovery,
               int freq, const std::string& discount_path, const std::string& out_path) {
    const auto ingest = ingest_csv_file(input);
    print_diagnostics(ingest);

    std::vector<const CdsCurve*> path;
    for (const auto& c : ingest.curves)
        if (entity_id.empty() || c.entity().entity_id == entity_id)
            path.push_back(&c);
    if (path.empty())
        throw UsageError("no curves for entity '" + entity_id + "' in " + input);
    for (std::size_t i = 1; i < path.size(); ++i)
        if (path[i]->entity().entity_id != path[0]->entity().entity_id)
            throw UsageError("multiple entities in file; pass --entity");

    const Date inception =
        inception_str.empty() ? path.front()->as_of() : Date::parse(inception_str);
    const Tenor t_short = Tenor::parse(short_tenor_str);
    const Tenor t_long = Tenor::parse(long_tenor_str);

    const CdsCurve* inception_curve = nullptr;
    for (const auto* c : path)
        if (c->as_of() == inception)
            inception_curve = c;
    if (!inception_curve)
        throw UsageError("no curve quoted on inception date " + inception.iso());
    const auto s1 = inception_curve->spread_at(t_short);
    const auto s2 = inception_curve->spread_at(t_long);
    if (!s1 || !s2)
        throw UsageError("inception curve lacks the requested tenors");

    const auto rec = RecoverySpec::from_recovery_rate(recovery);
    const DiscountCurve d = discount_path.empty() ? DiscountCurve::flat(0.0)
                                                  : load_discount_csv(discount_path);
    const CdsPosition short_leg(TradeDirection::short_protection, notional, *s1,
                                PaymentSchedule::regular(0.0, t_short.years(), freq), rec);
    const CdsPosition long_leg(TradeDirection::long_protection, notional, *s2,
                               PaymentSchedule::regular(0.0, t_long.years(), freq), rec);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file)
            throw Error("cannot open '" + out_path + "'");
        out = &file;
    }
    *out << "date,mtm,dv01,cr01\n";
    char buf[128];
    for (const auto* curve : path) {
        if (curve->as_of() < inception)
            continue;
        const double elapsed = year_fraction(inception, curve->as_of());
        if (elapsed >= t_long.years())
            break;
        const auto long_now = seasoned(long_leg, elapsed);
        std::optional<CdsPosition> short_now;
        if (elapsed < t_short.years() - 1e-9)
            short_now = seasoned(short_leg, elapsed);
        const auto surv = bootstrap_hazards(*curve, d, rec, freq);
        double mtm = cds_mtm(long_now, d, surv);
        if (short_now)
            mtm += cds_mtm(*short_now, d, surv);
        double v01, c01;
        if (short_now) {
            const PairedTrade trade(*short_now, long_now);
            v01 = dv01(trade, d, *curve, rec, freq);
            c01 = cr01(trade, d, *curve, rec, freq);
        } else {
            v01 = dv01(long_now, d, *curve, rec, freq);
            c01 = cr01(long_now, d, *curve, rec, freq);
        }
        std::snprintf(buf, sizeof buf, "%s,%.2f,%.2f,%.2f\n",
                      curve->as_of().iso().c_str(), mtm, v01, c01);
        *out << buf;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CDS term-structure no-arbitrage scanner and analytics"};
    app.require_subcommand(1);

    // scan
    std::string input, pairs_spec = "0.5:1,1:2,2:5,5:10", condition = "thm1";
    std::string discount_path, irs_path, exclude_spec, report_path, format = "json";
    std::string plot_dir;
    double t0 = 0.0, epsilon = 0.0;
    bool fail_on_anomaly = false;
    int freq = 4;
    auto* scan_cmd = app.add_subcommand("scan", "scan a quote file for anomalies");
    scan_cmd->add_option("--input", input, "quote CSV file")->required();
    scan_cmd->add_option("--pairs", pairs_spec, "maturity pairs, e.g. 0.5:1,1:2,2:5,5:10");
    scan_cmd->add_option("--condition", condition, "thm1|thm2|thm3|irs");
    scan_cmd->add_option("--discount", discount_path, "discount CSV (t_years,discount_factor)");
    scan_cmd->add_option("--irs", irs_path, "IRS CSV (T_years,rate_decimal)");
    scan_cmd->add_option("--t0", t0, "effective start for the IRS curve");
    scan_cmd->add_option("--epsilon", epsilon, "violation margin in bp*years (default 0)");
    scan_cmd->add_option("--exclude", exclude_spec, "entity ids excluded from MAR stats");
    scan_cmd->add_option("--report", report_path, "report output path (default stdout)");
    scan_cmd->add_option("--format", format, "json|csv");
    scan_cmd->add_option("--plot-data", plot_dir, "directory for plot CSV export");
    scan_cmd->add_option("--freq", freq, "payments per year for thm3 schedules");
    scan_cmd->add_flag("--fail-on-anomaly", fail_on_anomaly,
                       "exit with code 1 when anomalies are found");

    // gen
    std::uint64_t seed = 42;
    long gen_curves = 1000, gen_violations = 37;
    std::string gen_out = "synthetic.csv", manifest_path;
    auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic quote dataset");
    gen_cmd->add_option("--seed", seed, "generator seed");
    gen_cmd->add_option("--curves", gen_curves, "number of curves");
    gen_cmd->add_option("--violations", gen_violations, "planted violations");
    gen_cmd->add_option("--out", gen_out, "output CSV path");
    gen_cmd->add_option("--manifest", manifest_path, "ground-truth manifest JSON path");

    // replay
    std::string replay_input, entity, inception, short_tenor = "5", long_tenor = "10";
    std::string replay_out, replay_discount;
    double notional = 1e7, recovery = 0.40;
    int replay_freq = 4;
    auto* replay_cmd =
        app.add_subcommand("replay", "mark-to-market replay of the paired trade");
    replay_cmd->add_option("--input", replay_input, "quote CSV time series")->required();
    replay_cmd->add_option("--entity", entity, "entity id (required for multi-name files)");
    replay_cmd->add_option("--inception", inception, "inception date (default: first quote date)");
    replay_cmd->add_option("--short-tenor", short_tenor, "short leg tenor in years");
    replay_cmd->add_option("--long-tenor", long_tenor, "long leg tenor in years");
    replay_cmd->add_option("--notional", notional, "per-leg notional");
    replay_cmd->add_option("--recovery", recovery, "recovery rate (LGD = 1 - R)");
    replay_cmd->add_option("--freq", replay_freq, "payments per year");
    replay_cmd->add_option("--discount", replay_discount, "discount CSV (default: zero rates)");
    replay_cmd->add_option("--out", replay_out, "output CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan_cmd->parsed())
            return run_scan(input, pairs_spec, condition, discount_path, irs_path, t0,
                            epsilon, exclude_spec, report_path, format, plot_dir,
                            fail_on_anomaly, freq);
        if (gen_cmd->parsed())
            return run_gen(seed, gen_curves, gen_violations, gen_out, manifest_path);
        if (replay_cmd->parsed())
            return run_replay(replay_input, entity, inception, short_tenor, long_tenor,
                              notional, recovery, replay_freq, replay_discount,
                              replay_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
