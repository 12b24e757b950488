#include "qwalk/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qwalk/dynamics.hpp"
#include "qwalk/metrology.hpp"
#include "qwalk/optimize.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

using nlohmann::json;

namespace {

const std::set<std::string> kRealParams{"gamma", "t", "beta_O", "beta_E", "phi"};
const std::set<std::string> kIntParams{"n", "d", "p", "q", "m", "delta"};
const std::set<std::string> kPreps{"optimal", "ground", "uniform-position", "balanced-phi"};
const std::set<std::string> kPovms{"complete", "first-m", "face", "central", "parity", "subset", "none"};

bool is_param(const std::string& name) { return kRealParams.count(name) || kIntParams.count(name); }

std::size_t as_count(const SweepPoint& pt, const std::string& key) {
    const auto it = pt.params.find(key);
    if (it == pt.params.end()) throw DomainError("missing parameter '" + key + "'");
    const double v = it->second;
    if (!(v >= 0.0) || v != std::floor(v)) throw DomainError("parameter '" + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(v);
}

double as_real(const SweepPoint& pt, const std::string& key) {
    const auto it = pt.params.find(key);
    if (it == pt.params.end()) throw DomainError("missing parameter '" + key + "'");
    return it->second;
}

GraphSpec make_spec(const SweepPoint& pt) {
    switch (parse_family(pt.family)) {
        case Family::Complete: return GraphSpec::complete(as_count(pt, "n"));
        case Family::Cycle: return GraphSpec::cycle(as_count(pt, "n"));
        case Family::Star: return GraphSpec::star(as_count(pt, "n"));
        case Family::Hypercube: return GraphSpec::hypercube(as_count(pt, "d"));
        case Family::CompleteBipartite: return GraphSpec::complete_bipartite(as_count(pt, "p"), as_count(pt, "q"));
        case Family::Circulant: return GraphSpec::circulant(as_count(pt, "n"), pt.couplings);
    }
    throw DomainError("unknown family");
}

Preparation make_prep(const SweepPoint& pt, const GraphSpec& spec, double gamma, double t) {
    const auto n = static_cast<Eigen::Index>(spec.node_count());
    if (pt.prep == "optimal") return max_qfi(spec, gamma, t).preparation;
    if (pt.prep == "ground") return Preparation::ground(n);
    if (pt.prep == "uniform-position") return Preparation::uniform_position(n);
    if (pt.prep == "balanced-phi") {
        if (!spec.is_bipartite()) throw DomainError("balanced-phi preparation needs a bipartite graph");
        return Preparation::energy_superposition(n, 0, n - 1, as_real(pt, "phi"));
    }
    throw DomainError("unknown preparation '" + pt.prep + "'");
}

PositionPovm make_povm(const SweepPoint& pt, const GraphSpec& spec) {
    const std::size_t n = spec.node_count();
    if (pt.povm == "complete") return PositionPovm::complete(n);
    if (pt.povm == "first-m") return PositionPovm::first_nodes(as_count(pt, "m"), n);
    if (pt.povm == "face") {
        if (spec.family() != Family::Hypercube) throw DomainError("face measurement needs a hypercube");
        return PositionPovm::hypercube_face(spec.dimension(), as_count(pt, "delta"));
    }
    if (pt.povm == "central") return PositionPovm::central(n);
    if (pt.povm == "parity") {
        const double half = double(n) / 2.0;
        const double no = as_real(pt, "beta_O") * half;
        const double ne = as_real(pt, "beta_E") * half;
        if (std::abs(no - std::round(no)) > 1e-9 || std::abs(ne - std::round(ne)) > 1e-9 || no < 0 || ne < 0) {
            throw DomainError("beta * n / 2 must be a non-negative integer");
        }
        return PositionPovm::cycle_parity(n, static_cast<std::size_t>(std::llround(no)),
                                          static_cast<std::size_t>(std::llround(ne)));
    }
    if (pt.povm == "subset") return PositionPovm(pt.subset, n);
    throw DomainError("unknown POVM '" + pt.povm + "'");
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + format_double(v[k]);
    return s;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + std::to_string(v[k]);
    return s;
}

std::vector<double> axis_values(const json& a, const std::string& ptr, bool integer) {
    std::vector<double> out;
    if (a.contains("values")) {
        if (!a["values"].is_array() || a["values"].empty()) throw ConfigError(ptr + "/values", "must be a non-empty array");
        for (std::size_t k = 0; k < a["values"].size(); ++k) {
            const auto& v = a["values"][k];
            if (!v.is_number()) throw ConfigError(ptr + "/values/" + std::to_string(k), "must be a number");
            const double x = v.get<double>();
            if (integer && x != std::floor(x)) throw ConfigError(ptr + "/values/" + std::to_string(k), "must be an integer");
            out.push_back(x);
        }
        return out;
    }
    for (const char* key : {"min", "max"}) {
        if (!a.contains(key) || !a[key].is_number()) throw ConfigError(ptr + "/" + key, "required number (or give 'values')");
    }
    const double lo = a["min"].get<double>();
    const double hi = a["max"].get<double>();
    if (hi < lo) throw ConfigError(ptr + "/max", "must be >= min");
    if (integer) {
        if (lo != std::floor(lo) || hi != std::floor(hi)) throw ConfigError(ptr, "integer axis needs integer min/max");
        long long step = 1;
        if (a.contains("step")) {
            if (!a["step"].is_number_integer() || a["step"].get<long long>() < 1) {
                throw ConfigError(ptr + "/step", "must be a positive integer");
            }
            step = a["step"].get<long long>();
        }
        for (long long v = static_cast<long long>(lo); v <= static_cast<long long>(hi); v += step) out.push_back(double(v));
        return out;
    }
    if (!a.contains("steps") || !a["steps"].is_number_integer() || a["steps"].get<long long>() < 1) {
        throw ConfigError(ptr + "/steps", "required positive integer for a real axis");
    }
    const auto steps = a["steps"].get<std::size_t>();
    for (std::size_t k = 0; k < steps; ++k) {
        out.push_back(steps == 1 ? lo : lo + (hi - lo) * double(k) / double(steps - 1));
    }
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (quoted) {
            if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                cur += '"';
                ++k;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

std::map<std::string, std::string> row_cells(const SweepRow& r) {
    std::map<std::string, std::string> c;
    c["family"] = r.point.family;
    for (const auto& [k, v] : r.point.params) c[k] = format_double(v);
    c["couplings"] = join(r.point.couplings);
    c["prep"] = r.point.prep;
    c["povm"] = r.point.povm;
    c["subset"] = join(r.point.subset);
    const auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    c["qfi"] = opt(r.qfi);
    c["max_qfi"] = opt(r.max_qfi);
    c["fi"] = opt(r.fi);
    c["eta"] = opt(r.eta);
    c["eta_max"] = opt(r.eta_max);
    c["error"] = r.error;
    return c;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols{"family", "n",     "d",      "p",     "q",    "gamma",  "t",
                                               "m",      "beta_O", "beta_E", "phi",   "delta", "couplings",
                                               "prep",   "povm",  "subset", "qfi",   "max_qfi", "fi",
                                               "eta",    "eta_max", "error"};
    return cols;
}

SweepConfig parse_sweep_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("", "config must be a JSON object");

    static const std::set<std::string> known{"family", "n",     "d",    "p",      "q",      "gamma",  "t",
                                             "m",      "beta_O", "beta_E", "phi", "delta",  "couplings", "prep",
                                             "povm",   "axes",   "format", "output", "workers", "$schema"};
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) throw ConfigError("/" + key, "unknown key");
    }

    SweepConfig cfg;
    if (!j.contains("family") || !j["family"].is_string()) throw ConfigError("/family", "required string");
    cfg.base.family = j["family"].get<std::string>();
    try {
        parse_family(cfg.base.family);
    } catch (const DomainError& e) {
        throw ConfigError("/family", e.what());
    }
    for (const auto& name : kRealParams) {
        if (!j.contains(name)) continue;
        if (!j[name].is_number()) throw ConfigError("/" + name, "must be a number");
        cfg.base.params[name] = j[name].get<double>();
    }
    for (const auto& name : kIntParams) {
        if (!j.contains(name)) continue;
        if (!j[name].is_number_integer() || j[name].get<long long>() < 0) {
            throw ConfigError("/" + name, "must be a non-negative integer");
        }
        cfg.base.params[name] = j[name].get<double>();
    }
    if (j.contains("couplings")) {
        if (!j["couplings"].is_array()) throw ConfigError("/couplings", "must be an array of numbers");
        for (std::size_t k = 0; k < j["couplings"].size(); ++k) {
            if (!j["couplings"][k].is_number()) throw ConfigError("/couplings/" + std::to_string(k), "must be a number");
            cfg.base.couplings.push_back(j["couplings"][k].get<double>());
        }
    }
    if (j.contains("prep")) {
        if (!j["prep"].is_string() || !kPreps.count(j["prep"].get<std::string>())) {
            throw ConfigError("/prep", "must be one of optimal, ground, uniform-position, balanced-phi");
        }
        cfg.base.prep = j["prep"].get<std::string>();
    }
    if (j.contains("povm")) {
        const auto& p = j["povm"];
        if (p.is_string()) {
            cfg.base.povm = p.get<std::string>();
        } else if (p.is_object() && p.contains("kind") && p["kind"].is_string()) {
            cfg.base.povm = p["kind"].get<std::string>();
            if (p.contains("delta")) {
                if (!p["delta"].is_number_integer()) throw ConfigError("/povm/delta", "must be an integer");
                cfg.base.params["delta"] = p["delta"].get<double>();
            }
            if (p.contains("nodes")) {
                if (!p["nodes"].is_array()) throw ConfigError("/povm/nodes", "must be an array of node labels");
                for (std::size_t k = 0; k < p["nodes"].size(); ++k) {
                    const auto& v = p["nodes"][k];
                    if (!v.is_number_integer() || v.get<long long>() < 1) {
                        throw ConfigError("/povm/nodes/" + std::to_string(k), "must be a positive integer");
                    }
                    cfg.base.subset.push_back(v.get<std::size_t>());
                }
            }
        } else {
            throw ConfigError("/povm", "must be a string or an object with a 'kind'");
        }
        if (!kPovms.count(cfg.base.povm)) throw ConfigError("/povm", "unknown POVM kind '" + cfg.base.povm + "'");
        if (cfg.base.povm == "subset" && cfg.base.subset.empty()) throw ConfigError("/povm/nodes", "subset POVM needs nodes");
    }
    if (j.contains("axes")) {
        const auto& axes = j["axes"];
        if (!axes.is_array()) throw ConfigError("/axes", "must be an array");
        if (axes.size() > 2) throw ConfigError("/axes", "at most 2 sweep axes are supported");
        std::set<std::string> seen;
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const std::string ptr = "/axes/" + std::to_string(k);
            const auto& a = axes[k];
            if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) throw ConfigError(ptr + "/name", "required string");
            const auto name = a["name"].get<std::string>();
            if (!is_param(name)) throw ConfigError(ptr + "/name", "unknown axis '" + name + "'");
            if (!seen.insert(name).second) throw ConfigError(ptr + "/name", "axis '" + name + "' repeated");
            cfg.axes.push_back(SweepAxis{name, axis_values(a, ptr, kIntParams.count(name) > 0)});
        }
    }
    if (j.contains("format")) {
        const auto f = j["format"].is_string() ? j["format"].get<std::string>() : std::string();
        if (f == "csv") cfg.format = SweepFormat::Csv;
        else if (f == "json") cfg.format = SweepFormat::Json;
        else throw ConfigError("/format", "must be 'csv' or 'json'");
    }
    if (j.contains("output")) {
        if (!j["output"].is_string()) throw ConfigError("/output", "must be a string path");
        cfg.output = j["output"].get<std::string>();
    }
    if (j.contains("workers")) {
        if (!j["workers"].is_number_integer() || j["workers"].get<long long>() < 0) {
            throw ConfigError("/workers", "must be a non-negative integer");
        }
        cfg.workers = j["workers"].get<std::size_t>();
    }
    return cfg;
}

SweepRow evaluate_point(const SweepPoint& point) {
    SweepRow row;
    row.point = point;
    try {
        const GraphSpec spec = make_spec(point);
        const double gamma = as_real(point, "gamma");
        const double t = as_real(point, "t");
        // Derived sizes are reported for every family.
        row.point.params["n"] = double(spec.node_count());
        if (spec.family() == Family::Hypercube) row.point.params["d"] = double(spec.dimension());
        if (spec.is_bipartite()) {
            row.point.params["p"] = double(spec.part_p());
            row.point.params["q"] = double(spec.part_q());
        }
        const Preparation prep = make_prep(point, spec, gamma, t);
        const EvolvedState ev = evolve(spec, gamma, prep, t);
        row.qfi = qfi_pure(ev);
        row.max_qfi = max_qfi_value(spec, gamma, t);
        if (point.povm != "none") {
            const FisherResult f = fi_povm(ev, make_povm(point, spec));
            if (f.singular) throw NumericalError(f.diagnostic);
            row.fi = f.value;
            if (*row.qfi > 0.0) row.eta = f.value / *row.qfi;
            if (*row.max_qfi > 0.0) row.eta_max = f.value / *row.max_qfi;
        }
    } catch (const std::exception& e) {
        row.qfi.reset();
        row.max_qfi.reset();
        row.fi.reset();
        row.eta.reset();
        row.eta_max.reset();
        row.error = e.what();
    }
    return row;
}

SweepTable run_sweep(const SweepConfig& cfg) {
    if (cfg.axes.size() > 2) throw ConfigError("/axes", "at most 2 sweep axes are supported");
    std::vector<SweepPoint> points;
    if (cfg.axes.empty()) {
        points.push_back(cfg.base);
    } else {
        const auto& outer = cfg.axes[0];
        const std::vector<double> single{0.0};
        const auto& inner_values = cfg.axes.size() == 2 ? cfg.axes[1].values : single;
        for (double a : outer.values) {
            for (double b : inner_values) {
                SweepPoint pt = cfg.base;
                pt.params[outer.name] = a;
                if (cfg.axes.size() == 2) pt.params[cfg.axes[1].name] = b;
                points.push_back(std::move(pt));
            }
        }
    }
    SweepTable table;
    table.rows.resize(points.size());
    parallel_for(points.size(), [&](std::size_t i) { table.rows[i] = evaluate_point(points[i]); }, cfg.workers);
    return table;
}

void write_csv(const SweepTable& table, std::ostream& out) {
    const auto& cols = sweep_columns();
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
    out << '\n';
    for (const auto& r : table.rows) {
        const auto cells = row_cells(r);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const auto it = cells.find(cols[k]);
            out << (k ? "," : "") << csv_escape(it == cells.end() ? std::string() : it->second);
        }
        out << '\n';
    }
}

void write_json(const SweepTable& table, std::ostream& out) {
    json rows = json::array();
    for (const auto& r : table.rows) {
        json o;
        o["family"] = r.point.family;
        for (const auto& [k, v] : r.point.params) {
            if (kIntParams.count(k)) o[k] = static_cast<long long>(v);
            else o[k] = v;
        }
        if (!r.point.couplings.empty()) o["couplings"] = r.point.couplings;
        o["prep"] = r.point.prep;
        o["povm"] = r.point.povm;
        if (!r.point.subset.empty()) o["subset"] = r.point.subset;
        const auto put = [&](const char* key, const std::optional<double>& v) {
            o[key] = v ? json(*v) : json(nullptr);
        };
        put("qfi", r.qfi);
        put("max_qfi", r.max_qfi);
        put("fi", r.fi);
        put("eta", r.eta);
        put("eta_max", r.eta_max);
        o["error"] = r.error.empty() ? json(nullptr) : json(r.error);
        rows.push_back(std::move(o));
    }
    out << json{{"columns", sweep_columns()}, {"rows", rows}}.dump(2) << '\n';
}

std::vector<std::map<std::string, std::string>> read_csv(std::istream& in) {
    std::vector<std::map<std::string, std::string>> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    const auto header = csv_split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = csv_split(line);
        if (cells.size() != header.size()) throw DomainError("CSV row has " + std::to_string(cells.size()) + " cells, header has " + std::to_string(header.size()));
        std::map<std::string, std::string> row;
        for (std::size_t k = 0; k < header.size(); ++k) row[header[k]] = cells[k];
        rows.push_back(std::move(row));
    }
    return rows;
}

SweepPoint point_from_csv_row(const std::map<std::string, std::string>& row) {
    SweepPoint pt;
    const auto get = [&](const std::string& key) -> std::string {
        const auto it = row.find(key);
        return it == row.end() ? std::string() : it->second;
    };
    pt.family = get("family");
    pt.prep = get("prep");
    pt.povm = get("povm");
    for (const auto& name : kRealParams) {
        if (const auto v = get(name); !v.empty()) pt.params[name] = std::stod(v);
    }
    for (const auto& name : kIntParams) {
        if (const auto v = get(name); !v.empty()) pt.params[name] = std::stod(v);
    }
    std::stringstream cs(get("couplings"));
    for (std::string item; std::getline(cs, item, ';');) pt.couplings.push_back(std::stod(item));
    std::stringstream ss(get("subset"));
    for (std::string item; std::getline(ss, item, ';');) pt.subset.push_back(std::stoul(item));
    return pt;
}

}  // namespace qwalk
