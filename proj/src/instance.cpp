#include "mr/instance.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "mr/errors.hpp"
#include "mr/rng.hpp"

namespace mr {

namespace {

using nlohmann::json;

}  // namespace

std::string to_string(ModelKind kind) {
    return kind == ModelKind::Interview ? "interview" : "coordination";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "interview") return ModelKind::Interview;
    if (s == "coordination") return ModelKind::Coordination;
    throw ParseError("unknown model kind: '" + s + "'");
}

int Locality::total_jobs() const {
    return std::accumulate(jobs_by_profession.begin(), jobs_by_profession.end(), 0);
}

std::size_t Instance::max_feasible_size() const {
    std::size_t cap_sum = 0;
    for (const auto& l : localities) cap_sum += static_cast<std::size_t>(l.capacity);
    return std::min(cap_sum, migrants.size());
}

void Instance::validate() const {
    if (migrants.empty() || localities.empty())
        throw ValidationError("instance must have at least one migrant and one locality");
    if (num_professions <= 0) throw ValidationError("num_professions must be positive");
    for (std::size_t i = 0; i < migrants.size(); ++i) {
        if (migrants[i].id != static_cast<int>(i))
            throw ValidationError("migrant ids must be dense 0..|V|-1");
        if (migrants[i].profession < 0 || migrants[i].profession >= num_professions)
            throw ValidationError("migrant " + std::to_string(i) + " has invalid profession");
    }
    for (std::size_t j = 0; j < localities.size(); ++j) {
        const auto& l = localities[j];
        if (l.id != static_cast<int>(j))
            throw ValidationError("locality ids must be dense 0..|L|-1");
        if (l.capacity < 0)
            throw ValidationError("locality " + std::to_string(j) + ": capacity must be >= 0");
        if (l.jobs_by_profession.size() != static_cast<std::size_t>(num_professions))
            throw ValidationError("locality " + std::to_string(j) +
                                  ": jobs_by_profession length must equal num_professions");
        for (int c : l.jobs_by_profession)
            if (c < 0)
                throw ValidationError("locality " + std::to_string(j) +
                                      ": job counts must be >= 0");
    }
    std::size_t expected_cols = model == ModelKind::Interview
                                    ? localities.size()
                                    : static_cast<std::size_t>(num_professions);
    if (probs.rows != migrants.size() || probs.cols != expected_cols)
        throw ValidationError("probability matrix has shape " + std::to_string(probs.rows) +
                              "x" + std::to_string(probs.cols) + ", expected " +
                              std::to_string(migrants.size()) + "x" +
                              std::to_string(expected_cols));
    if (probs.data.size() != probs.rows * probs.cols)
        throw ValidationError("probability matrix data size mismatch");
    for (double p : probs.data)
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("probability out of range [0,1]");
}

bool Instance::operator==(const Instance& o) const {
    if (model != o.model || num_professions != o.num_professions) return false;
    if (migrants.size() != o.migrants.size() || localities.size() != o.localities.size())
        return false;
    for (std::size_t i = 0; i < migrants.size(); ++i)
        if (migrants[i].id != o.migrants[i].id ||
            migrants[i].profession != o.migrants[i].profession)
            return false;
    for (std::size_t j = 0; j < localities.size(); ++j)
        if (localities[j].id != o.localities[j].id ||
            localities[j].capacity != o.localities[j].capacity ||
            localities[j].jobs_by_profession != o.localities[j].jobs_by_profession)
            return false;
    return probs == o.probs;
}

void GeneratorParams::validate() const {
    if (num_migrants <= 0) throw ValidationError("num_migrants must be positive");
    if (num_localities <= 0) throw ValidationError("num_localities must be positive");
    if (num_jobs <= 0) throw ValidationError("num_jobs must be positive");
    if (num_professions <= 0) throw ValidationError("num_professions must be positive");
    if (profession_mode == ProfessionMode::RandomAtLeastOne &&
        num_migrants < num_professions)
        throw ValidationError("RandomAtLeastOne requires |V| >= |Pi|");
    if (!jobs_per_profession.empty()) {
        if (jobs_per_profession.size() != static_cast<std::size_t>(num_professions))
            throw ValidationError("jobs_per_profession length must equal num_professions");
        int total = std::accumulate(jobs_per_profession.begin(), jobs_per_profession.end(), 0);
        if (total != num_jobs)
            throw ValidationError("jobs_per_profession must sum to num_jobs");
    }
    // jobs_match_migrant_professions replaces the requested job total with |V|.
    int effective_jobs = jobs_match_migrant_professions ? num_migrants : num_jobs;
    if (job_mode == JobDistributionMode::FixedTenPerLocality &&
        effective_jobs != 10 * num_localities)
        throw ValidationError("FixedTenPerLocality requires 10 * num_localities jobs");
}

namespace {

std::vector<int> assign_professions(const GeneratorParams& p, Rng& rng) {
    std::vector<int> prof(p.num_migrants, 0);
    if (p.profession_mode == ProfessionMode::EvenSplit) {
        // First |V| mod |Pi| professions get the ceiling share, in blocks.
        int base = p.num_migrants / p.num_professions;
        int extra = p.num_migrants % p.num_professions;
        int idx = 0;
        for (int pi = 0; pi < p.num_professions; ++pi) {
            int count = base + (pi < extra ? 1 : 0);
            for (int c = 0; c < count; ++c) prof[idx++] = pi;
        }
    } else {
        // One distinct random migrant per profession, the rest uniform.
        std::vector<int> order(p.num_migrants);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        for (int pi = 0; pi < p.num_professions; ++pi) prof[order[pi]] = pi;
        for (int i = p.num_professions; i < p.num_migrants; ++i)
            prof[order[i]] = static_cast<int>(rng.next_index(p.num_professions));
    }
    return prof;
}

std::vector<int> job_profession_tags(const GeneratorParams& p,
                                     const std::vector<int>& migrant_prof, Rng& rng) {
    std::vector<int> per_prof(p.num_professions, 0);
    if (p.jobs_match_migrant_professions) {
        for (int mp : migrant_prof) per_prof[mp]++;
    } else if (!p.jobs_per_profession.empty()) {
        per_prof = p.jobs_per_profession;
    } else {
        int base = p.num_jobs / p.num_professions;
        int extra = p.num_jobs % p.num_professions;
        for (int pi = 0; pi < p.num_professions; ++pi)
            per_prof[pi] = base + (pi < extra ? 1 : 0);
    }
    std::vector<int> tags;
    tags.reserve(p.num_jobs);
    for (int pi = 0; pi < p.num_professions; ++pi)
        for (int c = 0; c < per_prof[pi]; ++c) tags.push_back(pi);
    rng.shuffle(tags);
    return tags;
}

// Locality index for each job; job professions are a seeded shuffle, so
// dealing jobs out in order realizes a random assignment.
std::vector<int> job_localities(const GeneratorParams& p, int total_jobs, Rng& rng) {
    std::vector<int> loc(total_jobs, 0);
    switch (p.job_mode) {
        case JobDistributionMode::EqualPerLocality: {
            int base = total_jobs / p.num_localities;
            int extra = total_jobs % p.num_localities;
            int idx = 0;
            for (int l = 0; l < p.num_localities; ++l) {
                int count = base + (l < extra ? 1 : 0);
                for (int c = 0; c < count; ++c) loc[idx++] = l;
            }
            break;
        }
        case JobDistributionMode::RandomAtLeastOnePerLocality: {
            if (total_jobs < p.num_localities)
                throw ValidationError("RandomAtLeastOnePerLocality requires |J| >= |L|");
            for (int l = 0; l < p.num_localities; ++l) loc[l] = l;
            for (int j = p.num_localities; j < total_jobs; ++j)
                loc[j] = static_cast<int>(rng.next_index(p.num_localities));
            rng.shuffle(loc);
            break;
        }
        case JobDistributionMode::FixedTenPerLocality: {
            int idx = 0;
            for (int l = 0; l < p.num_localities; ++l)
                for (int c = 0; c < 10; ++c) loc[idx++] = l;
            break;
        }
    }
    return loc;
}

}  // namespace

Instance generate_instance(const GeneratorParams& params) {
    params.validate();
    Rng rng(mix_seed(params.seed, 0x6d725f67656eULL));

    Instance inst;
    inst.model = params.model;
    inst.num_professions = params.num_professions;

    std::vector<int> prof = assign_professions(params, rng);
    inst.migrants.resize(params.num_migrants);
    for (int i = 0; i < params.num_migrants; ++i) inst.migrants[i] = {i, prof[i]};

    std::vector<int> tags = job_profession_tags(params, prof, rng);
    int total_jobs = static_cast<int>(tags.size());
    std::vector<int> locs = job_localities(params, total_jobs, rng);

    inst.localities.resize(params.num_localities);
    for (int l = 0; l < params.num_localities; ++l) {
        inst.localities[l].id = l;
        inst.localities[l].jobs_by_profession.assign(params.num_professions, 0);
    }
    for (int j = 0; j < total_jobs; ++j)
        inst.localities[locs[j]].jobs_by_profession[tags[j]]++;
    for (auto& l : inst.localities)
        l.capacity = params.capacity_mode == CapacityMode::EqualToJobs ? l.total_jobs() : 10;

    if (params.model == ModelKind::Interview) {
        inst.probs.rows = params.num_migrants;
        inst.probs.cols = params.num_localities;
        inst.probs.data.resize(inst.probs.rows * inst.probs.cols);
        for (double& p : inst.probs.data) p = rng.next_double();
    } else {
        inst.probs.rows = params.num_migrants;
        inst.probs.cols = params.num_professions;
        inst.probs.data.assign(inst.probs.rows * inst.probs.cols, 0.0);
        // A migrant is only compatible with jobs of her own profession.
        for (int v = 0; v < params.num_migrants; ++v)
            inst.probs.at(v, prof[v]) = rng.next_double();
    }

    inst.validate();
    return inst;
}

namespace {

json instance_to_json(const Instance& inst) {
    json j;
    j["model"] = to_string(inst.model);
    j["num_professions"] = inst.num_professions;
    j["migrants"] = json::array();
    for (const auto& m : inst.migrants)
        j["migrants"].push_back({{"id", m.id}, {"profession", m.profession}});
    j["localities"] = json::array();
    for (const auto& l : inst.localities)
        j["localities"].push_back({{"id", l.id},
                                   {"capacity", l.capacity},
                                   {"jobs_by_profession", l.jobs_by_profession}});
    json rows = json::array();
    for (std::size_t r = 0; r < inst.probs.rows; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < inst.probs.cols; ++c) row.push_back(inst.probs.at(r, c));
        rows.push_back(std::move(row));
    }
    j["probs"] = std::move(rows);
    return j;
}

template <typename T>
T require_field(const json& j, const char* field, const std::string& where) {
    if (!j.contains(field))
        throw ParseError("missing field '" + std::string(field) + "' in " + where);
    try {
        return j.at(field).get<T>();
    } catch (const json::exception& e) {
        throw ParseError("bad field '" + std::string(field) + "' in " + where + ": " +
                         e.what());
    }
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid instance document: ") + e.what());
    }
    Instance inst;
    inst.model = model_kind_from_string(require_field<std::string>(j, "model", "instance"));
    inst.num_professions = require_field<int>(j, "num_professions", "instance");
    if (!j.contains("migrants") || !j["migrants"].is_array())
        throw ParseError("missing or non-array field 'migrants' in instance");
    for (std::size_t i = 0; i < j["migrants"].size(); ++i) {
        const auto& m = j["migrants"][i];
        std::string where = "migrants[" + std::to_string(i) + "]";
        inst.migrants.push_back(
            {require_field<int>(m, "id", where), require_field<int>(m, "profession", where)});
    }
    if (!j.contains("localities") || !j["localities"].is_array())
        throw ParseError("missing or non-array field 'localities' in instance");
    for (std::size_t i = 0; i < j["localities"].size(); ++i) {
        const auto& l = j["localities"][i];
        std::string where = "localities[" + std::to_string(i) + "]";
        inst.localities.push_back({require_field<int>(l, "id", where),
                                   require_field<int>(l, "capacity", where),
                                   require_field<std::vector<int>>(l, "jobs_by_profession", where)});
    }
    if (!j.contains("probs") || !j["probs"].is_array())
        throw ParseError("missing or non-array field 'probs' in instance");
    const auto& rows = j["probs"];
    inst.probs.rows = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array())
            throw ParseError("probs[" + std::to_string(r) + "] is not an array");
        if (r == 0) inst.probs.cols = rows[r].size();
        if (rows[r].size() != inst.probs.cols)
            throw ParseError("probs[" + std::to_string(r) + "] has ragged width");
        for (const auto& cell : rows[r]) {
            if (!cell.is_number())
                throw ParseError("probs[" + std::to_string(r) + "] contains a non-number");
            inst.probs.data.push_back(cell.get<double>());
        }
    }
    inst.validate();
    return inst;
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

void save_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << serialize_instance(inst);
}

}  // namespace mr
