#include "loadclust/validity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loadclust/errors.hpp"

namespace loadclust {

namespace {

const std::pair<IndexFlag, const char*> kFlagNames[] = {
    {IndexFlag::SingletonClusterPresent, "SingletonClusterPresent"},
    {IndexFlag::CoincidentCentres, "CoincidentCentres"},
    {IndexFlag::DbiSuppressed, "DbiSuppressed"},
    {IndexFlag::OutOfRangeDistance, "OutOfRangeDistance"},
    {IndexFlag::SingleCluster, "SingleCluster"},
    {IndexFlag::FewerThanTwoEligibleClusters, "FewerThanTwoEligibleClusters"},
};

std::vector<std::vector<std::vector<double>>> members_by_cluster(
    const Clustering& clustering, const FeatureMatrix& matrix) {
    std::vector<std::vector<std::vector<double>>> members(
        static_cast<std::size_t>(clustering.k));
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        members[static_cast<std::size_t>(clustering.assignments[r])].push_back(matrix.rows[r]);
    }
    return members;
}

double alpha_similarity(double d) {
    if (d <= 0.0) return 1.0;  // limit d -> 0
    if (d == 1.0) return 0.0;  // limit d -> 1
    return 1.0 / (1.0 - 1.0 / std::log(d));
}

}  // namespace

std::vector<std::string> flag_names(IndexFlags flags) {
    std::vector<std::string> out;
    for (const auto& [flag, name] : kFlagNames) {
        if (has_flag(flags, flag)) out.emplace_back(name);
    }
    return out;
}

IndexFlags flags_from_names(const std::vector<std::string>& names) {
    IndexFlags flags = 0;
    for (const auto& n : names) {
        for (const auto& [flag, name] : kFlagNames) {
            if (n == name) set_flag(flags, flag);
        }
    }
    return flags;
}

double profile_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw LengthMismatch("profile_distance needs equal non-empty lengths");
    }
    double s = 0.0;
    for (std::size_t h = 0; h < a.size(); ++h) {
        const double d = a[h] - b[h];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(a.size()));
}

double infra_set_distance(const std::vector<std::vector<double>>& members) {
    const std::size_t n = members.size();
    if (n == 0) throw EmptySet("infra_set_distance of an empty set");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = profile_distance(members[i], members[j]);
            s += 2.0 * d * d;  // ordered pairs; self-pairs contribute zero
        }
    }
    return std::sqrt(s / (2.0 * static_cast<double>(n)));
}

double scatter(const std::vector<std::vector<double>>& members,
               std::span<const double> centre) {
    if (members.empty()) throw EmptyCluster("scatter of an empty cluster");
    double s = 0.0;
    for (const auto& m : members) {
        if (m.size() != centre.size()) {
            throw LengthMismatch("scatter member/centre length mismatch");
        }
        for (std::size_t h = 0; h < centre.size(); ++h) {
            const double d = m[h] - centre[h];
            s += d * d;
        }
    }
    return std::sqrt(s / static_cast<double>(members.size()));
}

double mia(const Clustering& clustering, const FeatureMatrix& matrix) {
    double s = 0.0;
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        const double d = profile_distance(
            matrix.rows[r],
            clustering.centres[static_cast<std::size_t>(clustering.assignments[r])]);
        s += d * d;
    }
    return std::sqrt(s / clustering.k);
}

double ball(const Clustering& clustering, const FeatureMatrix& matrix) {
    double s = 0.0;
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        const double d = profile_distance(
            matrix.rows[r],
            clustering.centres[static_cast<std::size_t>(clustering.assignments[r])]);
        s += d * d;
    }
    return s / clustering.k;
}

double cdi(const Clustering& clustering, const FeatureMatrix& matrix) {
    if (clustering.k < 2) throw SingleCluster("cdi needs K >= 2");
    const double centre_spread = infra_set_distance(clustering.centres);
    if (centre_spread == 0.0) throw CoincidentCentres("cdi: all centres coincide");
    const auto members = members_by_cluster(clustering, matrix);
    double s = 0.0;
    for (const auto& cluster : members) {
        const double d = infra_set_distance(cluster);
        s += d * d;
    }
    return std::sqrt(s / clustering.k) / centre_spread;
}

double smi(const Clustering& clustering, IndexFlags& flags) {
    if (clustering.k < 2) throw SingleCluster("smi needs K >= 2");
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < clustering.k; ++i) {
        for (int j = 0; j < i; ++j) {
            const double d = profile_distance(clustering.centres[static_cast<std::size_t>(i)],
                                              clustering.centres[static_cast<std::size_t>(j)]);
            if (d > 1.0) set_flag(flags, IndexFlag::OutOfRangeDistance);
            best = std::max(best, alpha_similarity(d));
        }
    }
    return best;
}

double smi(const Clustering& clustering) {
    IndexFlags ignored = 0;
    return smi(clustering, ignored);
}

std::optional<double> dbi(const Clustering& clustering, const FeatureMatrix& matrix,
                          SingletonPolicy policy, IndexFlags& flags) {
    if (clustering.k < 2) throw SingleCluster("dbi needs K >= 2");
    const bool any_singleton =
        std::any_of(clustering.sizes.begin(), clustering.sizes.end(),
                    [](int s) { return s == 1; });

    std::vector<int> eligible;
    for (int c = 0; c < clustering.k; ++c) {
        if (!any_singleton || clustering.sizes[static_cast<std::size_t>(c)] >= 2) {
            eligible.push_back(c);
        }
    }
    if (any_singleton) {
        set_flag(flags, IndexFlag::SingletonClusterPresent);
        if (policy == SingletonPolicy::Suppress) {
            set_flag(flags, IndexFlag::DbiSuppressed);
            return std::nullopt;
        }
        if (eligible.size() < 2) {
            throw FewerThanTwoEligibleClusters("dbi: fewer than 2 clusters with >= 2 members");
        }
    }

    const auto members = members_by_cluster(clustering, matrix);
    std::vector<double> scat(static_cast<std::size_t>(clustering.k), 0.0);
    for (const int c : eligible) {
        scat[static_cast<std::size_t>(c)] = scatter(members[static_cast<std::size_t>(c)],
                                                    clustering.centres[static_cast<std::size_t>(c)]);
    }

    double total = 0.0;
    for (const int j : eligible) {
        double worst = -std::numeric_limits<double>::infinity();
        for (const int i : eligible) {
            if (i == j) continue;
            const double d = profile_distance(clustering.centres[static_cast<std::size_t>(i)],
                                              clustering.centres[static_cast<std::size_t>(j)]);
            if (d == 0.0) throw CoincidentCentres("dbi: coincident centres");
            worst = std::max(worst, (scat[static_cast<std::size_t>(i)] +
                                     scat[static_cast<std::size_t>(j)]) / d);
        }
        total += worst;
    }
    return total / static_cast<double>(eligible.size());
}

std::optional<double> dbi(const Clustering& clustering, const FeatureMatrix& matrix,
                          SingletonPolicy policy) {
    IndexFlags ignored = 0;
    return dbi(clustering, matrix, policy, ignored);
}

IndexReport adjust_for_attribute_count(const IndexReport& report) {
    IndexReport out = report;
    const double h = static_cast<double>(std::max(1, report.h));
    out.mia /= h;
    out.ball /= h;
    if (out.cdi) *out.cdi /= h;
    if (out.smi) *out.smi /= h;
    if (out.dbi) *out.dbi /= h;
    return out;
}

IndexReport index_report(const Clustering& clustering, const FeatureMatrix& matrix,
                         SingletonPolicy policy) {
    IndexReport report;
    report.k = clustering.k;
    report.h = static_cast<int>(matrix.attribute_count());
    report.mia = mia(clustering, matrix);
    report.ball = ball(clustering, matrix);

    if (clustering.k < 2) {
        set_flag(report.flags, IndexFlag::SingleCluster);
        return report;
    }
    try {
        report.cdi = cdi(clustering, matrix);
    } catch (const CoincidentCentres&) {
        set_flag(report.flags, IndexFlag::CoincidentCentres);
    }
    report.smi = smi(clustering, report.flags);
    try {
        report.dbi = dbi(clustering, matrix, policy, report.flags);
    } catch (const CoincidentCentres&) {
        set_flag(report.flags, IndexFlag::CoincidentCentres);
    } catch (const FewerThanTwoEligibleClusters&) {
        set_flag(report.flags, IndexFlag::FewerThanTwoEligibleClusters);
    }
    return report;
}

}  // namespace loadclust
