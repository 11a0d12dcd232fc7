#pragma once

// The five migration-quality metrics scored against the call matrix:
// structural modularity (SM), inter-call percentage (ICP), interface number
// (IFN), non-extreme distribution (NED) and duplicated classes (DUP).
// Noise classes and classes missing from the decomposition are excluded
// from every sum; external decompositions may assign a class to several
// services, in which case each assignment is scored where it sits.

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "monosplit/model.hpp"

namespace monosplit {

namespace metrics_detail {

/// One service resolved to call-matrix indices, in decomposition map order
/// (alphabetical by service name). Throws on unknown class names.
struct ServiceView {
    std::string name;
    std::vector<std::size_t> members;
};

inline std::vector<ServiceView> service_views(const CallMatrix& calls,
                                              const Decomposition& d) {
    std::vector<ServiceView> views;
    for (const auto& [name, members] : d.services) {
        ServiceView v;
        v.name = name;
        for (const auto& cls : members) {
            auto idx = calls.index_of(cls);
            if (!idx) throw std::invalid_argument("unknown class: " + cls);
            v.members.push_back(*idx);
        }
        views.push_back(std::move(v));
    }
    if (views.empty())
        throw std::invalid_argument("decomposition has no services");
    return views;
}

}  // namespace metrics_detail

struct SmDetail {
    double sm = 0.0;
    std::vector<double> scoh;  // per service, decomposition order
    // (service i, service j, scop) for i < j
    std::vector<std::tuple<std::size_t, std::size_t, double>> scop;
};

/// SM = mean cohesion - mean coupling. Cohesion of a service is its
/// internal call count over size squared; coupling of a pair is the calls
/// crossing it (both directions) over twice the size product. A single
/// service has no pairs, so SM reduces to its cohesion.
inline SmDetail structural_modularity(const CallMatrix& calls,
                                      const Decomposition& d) {
    const auto views = metrics_detail::service_views(calls, d);
    const std::size_t m_count = views.size();
    SmDetail out;
    double scoh_sum = 0.0;
    for (const auto& v : views) {
        long long mu = 0;
        for (std::size_t u : v.members)
            for (std::size_t w : v.members)
                if (u != w) mu += calls.at(u, w);
        const double size = static_cast<double>(v.members.size());
        const double scoh = static_cast<double>(mu) / (size * size);
        out.scoh.push_back(scoh);
        scoh_sum += scoh;
    }
    double scop_sum = 0.0;
    for (std::size_t i = 0; i < m_count; ++i)
        for (std::size_t j = i + 1; j < m_count; ++j) {
            long long gamma = 0;
            for (std::size_t u : views[i].members)
                for (std::size_t w : views[j].members)
                    gamma += calls.at(u, w) + calls.at(w, u);
            const double scop =
                static_cast<double>(gamma) /
                (2.0 * static_cast<double>(views[i].members.size()) *
                 static_cast<double>(views[j].members.size()));
            out.scop.emplace_back(i, j, scop);
            scop_sum += scop;
        }
    out.sm = scoh_sum / static_cast<double>(m_count);
    if (m_count > 1) {
        const double pairs =
            static_cast<double>(m_count) * static_cast<double>(m_count - 1) / 2.0;
        out.sm -= scop_sum / pairs;
    }
    return out;
}

struct IcpDetail {
    double aggregate = 0.0;   // inter / (intra + inter), 0 when no calls
    long long intra = 0;
    long long inter = 0;
    std::vector<PairIcp> pairs;  // directed, only pairs with traffic;
                                 // icp = pair calls / total inter calls
};

inline IcpDetail icp(const CallMatrix& calls, const Decomposition& d) {
    const auto views = metrics_detail::service_views(calls, d);
    IcpDetail out;
    std::vector<std::vector<long long>> c(views.size(),
                                          std::vector<long long>(views.size(), 0));
    for (std::size_t i = 0; i < views.size(); ++i)
        for (std::size_t j = 0; j < views.size(); ++j) {
            if (i == j) {
                for (std::size_t u : views[i].members)
                    for (std::size_t w : views[i].members)
                        if (u != w) out.intra += calls.at(u, w);
                continue;
            }
            for (std::size_t u : views[i].members)
                for (std::size_t w : views[j].members)
                    c[i][j] += calls.at(u, w);
            out.inter += c[i][j];
        }
    const long long total = out.intra + out.inter;
    out.aggregate = total > 0 ? static_cast<double>(out.inter) /
                                    static_cast<double>(total)
                              : 0.0;
    for (std::size_t i = 0; i < views.size(); ++i)
        for (std::size_t j = 0; j < views.size(); ++j)
            if (i != j && c[i][j] > 0)
                out.pairs.push_back({views[i].name, views[j].name, c[i][j],
                                     static_cast<double>(c[i][j]) /
                                         static_cast<double>(out.inter)});
    return out;
}

struct IfnDetail {
    double mean = 0.0;
    std::vector<std::size_t> per_service;  // interface count, decomposition order
};

/// A class is an interface of its service when some class assigned to a
/// different service calls it.
inline IfnDetail ifn(const CallMatrix& calls, const Decomposition& d) {
    const auto views = metrics_detail::service_views(calls, d);
    std::vector<std::vector<std::size_t>> services_of(calls.size());
    for (std::size_t i = 0; i < views.size(); ++i)
        for (std::size_t u : views[i].members) services_of[u].push_back(i);
    IfnDetail out;
    std::size_t total = 0;
    for (std::size_t i = 0; i < views.size(); ++i) {
        std::size_t count = 0;
        for (std::size_t x : views[i].members) {
            bool is_interface = false;
            for (std::size_t u = 0; u < calls.size() && !is_interface; ++u) {
                if (calls.at(u, x) == 0) continue;
                for (std::size_t s : services_of[u])
                    if (s != i) {
                        is_interface = true;
                        break;
                    }
            }
            if (is_interface) ++count;
        }
        out.per_service.push_back(count);
        total += count;
    }
    out.mean = static_cast<double>(total) / static_cast<double>(views.size());
    return out;
}

/// Share of services with an extreme size; a size in [5,20] is non-extreme.
inline double ned(const Decomposition& d) {
    if (d.services.empty())
        throw std::invalid_argument("decomposition has no services");
    std::size_t non_extreme = 0;
    for (const auto& [name, members] : d.services)
        if (members.size() >= 5 && members.size() <= 20) ++non_extreme;
    return 1.0 - static_cast<double>(non_extreme) /
                     static_cast<double>(d.services.size());
}

/// Number of classes assigned to more than one service (each counted once).
inline long long dup(const Decomposition& d) {
    return static_cast<long long>(d.duplicated_classes().size());
}

inline MetricsReport evaluate(const CallMatrix& calls, const Decomposition& d) {
    validate_decomposition(d);
    const auto views = metrics_detail::service_views(calls, d);
    const SmDetail sm_d = structural_modularity(calls, d);
    const IcpDetail icp_d = icp(calls, d);
    const IfnDetail ifn_d = ifn(calls, d);

    MetricsReport r;
    r.sm = sm_d.sm;
    r.icp = icp_d.aggregate;
    r.ifn = ifn_d.mean;
    r.ned = ned(d);
    r.dup = dup(d);
    for (std::size_t i = 0; i < views.size(); ++i) {
        ServiceReport s;
        s.name = views[i].name;
        s.size = views[i].members.size();
        s.scoh = sm_d.scoh[i];
        s.interfaces = ifn_d.per_service[i];
        s.extreme = !(s.size >= 5 && s.size <= 20);
        r.per_service.push_back(std::move(s));
    }
    r.per_pair_icp = icp_d.pairs;
    return r;
}

inline ordered_json metrics_to_json(const MetricsReport& r) {
    ordered_json j;
    j["sm"] = r.sm;
    j["icp"] = r.icp;
    j["ifn"] = r.ifn;
    j["ned"] = r.ned;
    j["dup"] = r.dup;
    j["icp_denominator"] = r.icp_denominator;
    j["services"] = ordered_json::array();
    for (const auto& s : r.per_service) {
        ordered_json js;
        js["name"] = s.name;
        js["size"] = s.size;
        js["scoh"] = s.scoh;
        js["interfaces"] = s.interfaces;
        js["extreme"] = s.extreme;
        j["services"].push_back(std::move(js));
    }
    j["pairs"] = ordered_json::array();
    for (const auto& p : r.per_pair_icp) {
        ordered_json jp;
        jp["from"] = p.from;
        jp["to"] = p.to;
        jp["calls"] = p.calls;
        jp["icp"] = p.icp;
        j["pairs"].push_back(std::move(jp));
    }
    return j;
}

/// Two-column table: metric name, value.
inline std::string metrics_to_csv(const MetricsReport& r) {
    std::string out = "metric,value\n";
    out += "sm," + format_double(r.sm) + "\n";
    out += "icp," + format_double(r.icp) + "\n";
    out += "ifn," + format_double(r.ifn) + "\n";
    out += "ned," + format_double(r.ned) + "\n";
    out += "dup," + std::to_string(r.dup) + "\n";
    return out;
}

inline void save_metrics_json(const MetricsReport& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << metrics_to_json(r).dump(2) << "\n";
}

inline void save_metrics_csv(const MetricsReport& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << metrics_to_csv(r);
}

}  // namespace monosplit
