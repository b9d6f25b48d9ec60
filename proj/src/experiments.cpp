#include "bootperc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

#include "bootperc/graphgen.hpp"

namespace bootperc {

using nlohmann::json;

namespace {

// stream id layout: grid point in the high bits, replica in the middle,
// role (graph draw vs seed draw) in the low two bits
std::uint64_t stream_id(std::size_t point, std::size_t replica, unsigned role) {
    return (static_cast<std::uint64_t>(point) << 34) |
           (static_cast<std::uint64_t>(replica) << 2) | role;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool strategy_needs_weights(SeedSpec::Strategy s) {
    return s == SeedSpec::Strategy::SmallestWeights ||
           s == SeedSpec::Strategy::UniformInKernel;
}

} // namespace

std::size_t resolve_a(const SweepConfig& cfg, const SeedCount& av, std::size_t n) {
    double a = av.amount;
    if (av.times_a_c) {
        if (cfg.model.kind == SweepModel::Kind::ChungLu)
            a *= critical_a(static_cast<double>(n), cfg.model.beta, cfg.model.zeta,
                            cfg.r).value;
        else
            a *= er_thresholds(static_cast<double>(n), cfg.model.p, cfg.r).a_c;
    }
    if (a < 0.0)
        throw std::invalid_argument("negative seed size in a_values");
    return static_cast<std::size_t>(std::llround(a));
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, int threads,
                                   const PointSink& point_done) {
    require(cfg.replicas >= 1, "replicas must be >= 1");
    require(cfg.r >= 1, "r must be >= 1");
    require(!cfg.n_values.empty(), "n_values must be nonempty");
    require(!cfg.a_values.empty(), "a_values must be nonempty");
    require(cfg.seed_strategy != SeedSpec::Strategy::ExplicitSet,
            "sweeps need a parametric seed strategy");
    const bool is_cl = cfg.model.kind == SweepModel::Kind::ChungLu;
    require(is_cl || !strategy_needs_weights(cfg.seed_strategy),
            "weight-based seed strategy needs the chung_lu model");
    require(is_cl || !cfg.kernel_C.has_value(),
            "kernel_C needs the chung_lu model");

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif

    std::vector<SweepRecord> all;
    std::size_t point = 0;
    for (std::size_t n : cfg.n_values) {
        WeightSequence ws;
        std::size_t ker_c_size = 0;
        if (is_cl) {
            ws = build_weights(n, cfg.model.beta, cfg.model.zeta, cfg.model.x0);
            if (cfg.kernel_C) {
                require(*cfg.kernel_C <= ws.max_weight(),
                        "kernel_C exceeds the max weight");
                ker_c_size = kernel_size(ws, *cfg.kernel_C);
                require(ker_c_size > 0, "kernel_C gives an empty kernel");
            }
        }
        for (const SeedCount& av : cfg.a_values) {
            const std::size_t a = resolve_a(cfg, av, n);
            const std::size_t cur_point = point++;
            if (a > n) {
                std::cerr << "warning: skipping grid point n=" << n << " a=" << a
                          << " (a > n)\n";
                continue;
            }
            if (cfg.seed_strategy == SeedSpec::Strategy::UniformInKernel) {
                require(cfg.kernel_f > 0.0, "kernel seed strategy needs f > 0");
                require(a <= kernel_size(ws, cfg.kernel_f),
                        "a exceeds kernel size at grid point n=" + std::to_string(n));
            }

            SeedSpec spec;
            spec.strategy = cfg.seed_strategy;
            spec.a = a;
            spec.f = cfg.kernel_f;

            // fixed-graph studies share one draw per grid point
            Graph shared_graph;
            const std::uint64_t shared_gsid = stream_id(cur_point, 0, 1);
            if (!cfg.resample_graph)
                shared_graph = is_cl
                    ? sample_chung_lu(ws, RngStream(cfg.master_seed, shared_gsid))
                    : sample_gnp(n, cfg.model.p, RngStream(cfg.master_seed, shared_gsid));

            std::vector<SweepRecord> recs(cfg.replicas);
#pragma omp parallel for schedule(dynamic)
            for (std::size_t rep = 0; rep < cfg.replicas; ++rep) {
                SweepRecord& rec = recs[rep];
                rec.n = n;
                rec.a = a;
                rec.replica = rep;
                rec.r = cfg.r;
                rec.graph_seed =
                    cfg.resample_graph ? stream_id(cur_point, rep, 1) : shared_gsid;
                rec.seed_seed = stream_id(cur_point, rep, 2);

                Graph local;
                const Graph* g = &shared_graph;
                if (cfg.resample_graph) {
                    local = is_cl
                        ? sample_chung_lu(ws, RngStream(cfg.master_seed, rec.graph_seed))
                        : sample_gnp(n, cfg.model.p,
                                     RngStream(cfg.master_seed, rec.graph_seed));
                    g = &local;
                }

                auto seeds = select_seeds(spec, n, RngStream(cfg.master_seed, rec.seed_seed),
                                          is_cl ? &ws : nullptr);
                PercolationTrace trace = run_bootstrap(*g, seeds, cfg.r);
                rec.seed_size = trace.seed.size();
                rec.final_size = trace.final_size();
                rec.rounds = trace.rounds.size();
                rec.no_evolution = trace.no_evolution();
                if (ker_c_size > 0) {
                    auto it = std::lower_bound(trace.final_set.begin(),
                                               trace.final_set.end(),
                                               static_cast<std::uint32_t>(ker_c_size));
                    rec.kernel_fraction =
                        static_cast<double>(it - trace.final_set.begin()) /
                        static_cast<double>(ker_c_size);
                }
            }

            if (point_done) {
                try {
                    point_done(recs);
                } catch (const std::exception& e) {
                    throw std::runtime_error("output failed at grid point n=" +
                                             std::to_string(n) + " a=" +
                                             std::to_string(a) + ": " + e.what());
                }
            }
            all.insert(all.end(), recs.begin(), recs.end());
        }
    }
    return all;
}

NoEvolutionEstimate estimate_no_evolution(std::span<const SweepRecord> records,
                                          std::size_t n, std::size_t a) {
    NoEvolutionEstimate est;
    for (const auto& rec : records) {
        if (rec.n != n || rec.a != a) continue;
        ++est.total;
        if (rec.no_evolution) ++est.hits;
    }
    if (est.total == 0)
        throw std::invalid_argument("no records at the requested grid point");

    const double m = static_cast<double>(est.total);
    const double ph = static_cast<double>(est.hits) / m;
    const double z = 1.959963984540054; // 95% two-sided
    const double z2 = z * z;
    const double denom = 1.0 + z2 / m;
    const double center = (ph + z2 / (2.0 * m)) / denom;
    const double half =
        z * std::sqrt(ph * (1.0 - ph) / m + z2 / (4.0 * m * m)) / denom;
    est.p_hat = ph;
    est.lo = std::max(0.0, center - half);
    est.hi = std::min(1.0, center + half);
    return est;
}

FinalFractionEstimate estimate_final_fraction(std::span<const SweepRecord> records,
                                              std::size_t n, std::size_t a) {
    std::vector<double> fracs;
    for (const auto& rec : records)
        if (rec.n == n && rec.a == a)
            fracs.push_back(static_cast<double>(rec.final_size) /
                            static_cast<double>(rec.n));
    if (fracs.empty())
        throw std::invalid_argument("no records at the requested grid point");

    FinalFractionEstimate est;
    est.total = fracs.size();
    double sum = 0.0;
    for (double f : fracs) sum += f;
    est.mean = sum / static_cast<double>(fracs.size());
    if (fracs.size() > 1) {
        double ss = 0.0;
        for (double f : fracs) ss += (f - est.mean) * (f - est.mean);
        est.stderr_mean = std::sqrt(ss / (static_cast<double>(fracs.size()) - 1.0) /
                                    static_cast<double>(fracs.size()));
    }
    std::sort(fracs.begin(), fracs.end());
    const std::size_t mid = fracs.size() / 2;
    est.median = fracs.size() % 2 == 1 ? fracs[mid]
                                       : 0.5 * (fracs[mid - 1] + fracs[mid]);
    return est;
}

double kernel_coverage(const PercolationTrace& trace, const WeightSequence& ws,
                       double C) {
    if (!(C <= ws.max_weight()))
        throw std::invalid_argument("kernel_coverage: C exceeds the max weight");
    const std::size_t K = kernel_size(ws, C);
    if (K == 0)
        throw std::invalid_argument("kernel_coverage: empty kernel");
    auto it = std::lower_bound(trace.final_set.begin(), trace.final_set.end(),
                               static_cast<std::uint32_t>(K));
    return static_cast<double>(it - trace.final_set.begin()) /
           static_cast<double>(K);
}

const char* const kSweepCsvHeader =
    "n,a,replica,graph_seed,seed_seed,r,final_size,rounds,no_evolution,kernel_fraction";

void write_csv_header(std::ostream& out) { out << kSweepCsvHeader << '\n'; }

void write_csv_rows(std::ostream& out, std::span<const SweepRecord> records) {
    for (const auto& rec : records) {
        out << rec.n << ',' << rec.a << ',' << rec.replica << ',' << rec.graph_seed
            << ',' << rec.seed_seed << ',' << rec.r << ',' << rec.final_size << ','
            << rec.rounds << ',' << (rec.no_evolution ? 1 : 0) << ',';
        if (rec.kernel_fraction) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", *rec.kernel_fraction);
            out << buf;
        }
        out << '\n';
    }
}

void write_csv(std::span<const SweepRecord> records, const std::string& path) {
    std::ofstream out(path, std::ios::binary); // LF newlines everywhere
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    write_csv_header(out);
    write_csv_rows(out, records);
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

std::vector<SweepRecord> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader)
        throw std::runtime_error("bad CSV header in " + path);

    std::vector<SweepRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(col);
        if (ss.eof() && line.back() == ',') cols.push_back("");
        if (cols.size() != 10)
            throw std::runtime_error("bad CSV row: " + line);
        SweepRecord rec;
        rec.n = std::stoull(cols[0]);
        rec.a = std::stoull(cols[1]);
        rec.replica = std::stoull(cols[2]);
        rec.graph_seed = std::stoull(cols[3]);
        rec.seed_seed = std::stoull(cols[4]);
        rec.r = std::stoi(cols[5]);
        rec.final_size = std::stoull(cols[6]);
        rec.rounds = std::stoull(cols[7]);
        rec.no_evolution = cols[8] == "1";
        if (!cols[9].empty()) rec.kernel_fraction = std::stod(cols[9]);
        out.push_back(rec);
    }
    return out;
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& prefix) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) { ok = true; break; }
        if (!ok)
            throw std::invalid_argument("unknown config key: " + prefix + it.key());
    }
}

SeedCount parse_seed_count(const json& v) {
    SeedCount sc;
    if (v.is_number()) {
        sc.amount = v.get<double>();
        return sc;
    }
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        double mult = 0.0;
        int consumed = 0;
        if (std::sscanf(s.c_str(), "%lf*a_c%n", &mult, &consumed) == 1 &&
            consumed == static_cast<int>(s.size())) {
            sc.amount = mult;
            sc.times_a_c = true;
            return sc;
        }
        throw std::invalid_argument("a_values entry must be a number or \"<mult>*a_c\": " + s);
    }
    throw std::invalid_argument("a_values entry must be a number or string");
}

} // namespace

SweepConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("config must be a JSON object");
    reject_unknown_keys(doc,
                        {"model", "r", "seed_strategy", "a_values", "n_values",
                         "replicas", "master_seed", "resample_graph", "kernel_C",
                         "output_path"},
                        "");

    SweepConfig cfg;
    const json& model = doc.at("model");
    reject_unknown_keys(model, {"type", "beta", "zeta", "x0", "p"}, "model.");
    const std::string mtype = model.at("type").get<std::string>();
    if (mtype == "chung_lu") {
        cfg.model.kind = SweepModel::Kind::ChungLu;
        cfg.model.beta = model.at("beta").get<double>();
        cfg.model.zeta = model.at("zeta").get<double>();
        cfg.model.x0 = model.value("x0", 1.0);
        if (model.contains("p"))
            throw std::invalid_argument("model.p is a gnp field");
    } else if (mtype == "gnp") {
        cfg.model.kind = SweepModel::Kind::Gnp;
        cfg.model.p = model.at("p").get<double>();
        for (const char* k : {"beta", "zeta", "x0"})
            if (model.contains(k))
                throw std::invalid_argument(std::string("model.") + k +
                                            " is a chung_lu field");
    } else {
        throw std::invalid_argument("model.type must be chung_lu or gnp");
    }

    cfg.r = doc.at("r").get<int>();

    const json& strat = doc.at("seed_strategy");
    reject_unknown_keys(strat, {"type", "f"}, "seed_strategy.");
    const std::string stype = strat.at("type").get<std::string>();
    if (stype == "uniform") cfg.seed_strategy = SeedSpec::Strategy::UniformSubset;
    else if (stype == "bernoulli") cfg.seed_strategy = SeedSpec::Strategy::BernoulliPerVertex;
    else if (stype == "smallest") cfg.seed_strategy = SeedSpec::Strategy::SmallestWeights;
    else if (stype == "kernel") cfg.seed_strategy = SeedSpec::Strategy::UniformInKernel;
    else throw std::invalid_argument("seed_strategy.type must be one of "
                                     "uniform|bernoulli|smallest|kernel");
    if (cfg.seed_strategy == SeedSpec::Strategy::UniformInKernel)
        cfg.kernel_f = strat.at("f").get<double>();
    else if (strat.contains("f"))
        throw std::invalid_argument("seed_strategy.f only applies to the kernel strategy");

    for (const json& v : doc.at("a_values"))
        cfg.a_values.push_back(parse_seed_count(v));
    for (const json& v : doc.at("n_values"))
        cfg.n_values.push_back(v.get<std::size_t>());
    cfg.replicas = doc.at("replicas").get<std::size_t>();
    cfg.master_seed = doc.at("master_seed").get<std::uint64_t>();
    cfg.resample_graph = doc.value("resample_graph", true);
    if (doc.contains("kernel_C"))
        cfg.kernel_C = doc.at("kernel_C").get<double>();
    cfg.output_path = doc.value("output_path", std::string{});
    return cfg;
}

SweepConfig read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_to_json(const SweepConfig& cfg) {
    json doc;
    if (cfg.model.kind == SweepModel::Kind::ChungLu)
        doc["model"] = {{"type", "chung_lu"},
                        {"beta", cfg.model.beta},
                        {"zeta", cfg.model.zeta},
                        {"x0", cfg.model.x0}};
    else
        doc["model"] = {{"type", "gnp"}, {"p", cfg.model.p}};
    doc["r"] = cfg.r;
    json strat;
    switch (cfg.seed_strategy) {
    case SeedSpec::Strategy::UniformSubset: strat["type"] = "uniform"; break;
    case SeedSpec::Strategy::BernoulliPerVertex: strat["type"] = "bernoulli"; break;
    case SeedSpec::Strategy::SmallestWeights: strat["type"] = "smallest"; break;
    case SeedSpec::Strategy::UniformInKernel:
        strat["type"] = "kernel";
        strat["f"] = cfg.kernel_f;
        break;
    case SeedSpec::Strategy::ExplicitSet:
        throw std::invalid_argument("explicit seed sets are not sweepable");
    }
    doc["seed_strategy"] = strat;
    json avs = json::array();
    for (const SeedCount& av : cfg.a_values) {
        if (av.times_a_c) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g*a_c", av.amount);
            avs.push_back(std::string(buf));
        } else {
            avs.push_back(av.amount);
        }
    }
    doc["a_values"] = avs;
    doc["n_values"] = cfg.n_values;
    doc["replicas"] = cfg.replicas;
    doc["master_seed"] = cfg.master_seed;
    doc["resample_graph"] = cfg.resample_graph;
    if (cfg.kernel_C) doc["kernel_C"] = *cfg.kernel_C;
    if (!cfg.output_path.empty()) doc["output_path"] = cfg.output_path;
    return doc.dump(2);
}

} // namespace bootperc
