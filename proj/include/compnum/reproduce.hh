#ifndef COMPNUM_GUARD_REPRODUCE_HH
#define COMPNUM_GUARD_REPRODUCE_HH 1

#include <compnum/census.hh>
#include <compnum/witness.hh>

#include <string>
#include <utility>
#include <vector>

namespace compnum
{
    /// COMPNUM_DATA_DIR from the environment, else the source tree's data directory.
    auto data_directory() -> std::string;

    auto golden_certificate_path(unsigned n, unsigned q) -> std::string;

    /// Loads and verifies a shipped base witness. Throws Error if missing or invalid.
    auto load_golden_certificate(unsigned n, unsigned q) -> WitnessCertificate;

    struct PaperCheckOptions
    {
        /// Dimensions for the construction checks.
        std::vector<unsigned> n_values{4, 5};

        /// Restricts checks that take a q (thm1, thm4) or an (n, q) pair (lemma1).
        std::optional<unsigned> q;
        std::optional<unsigned> n;
        unsigned jobs = 1;
    };

    auto paper_targets() -> const std::vector<std::string> &;

    /// One report per sub-check. Throws PreconditionError for an unknown target.
    auto verify_paper(const std::string & target, const PaperCheckOptions & options = {}) -> std::vector<CheckReport>;

    /// Size, edge-disjointness and exact coverage of the maximal clique family of H(n,q).
    auto clique_family_report(unsigned n, unsigned q) -> CheckReport;
}

#endif
