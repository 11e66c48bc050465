#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levinlab/reduction.hpp"

namespace levin {

// One reduction of the catalog. `group` collects entries verified together
// (the three bounded-sequence equivalences share one group).
struct CatalogEntry {
  std::string group;
  LevinReduction reduction;
};

namespace reductions {

LevinReduction conv_to_fin();
LevinReduction fin_to_qpre();
LevinReduction qpre_to_conv();
LevinReduction bddseq_to_potop();  // literal transcription, falsifiable
LevinReduction potop_to_bddseq();
LevinReduction disconn_sub_to_fun();
LevinReduction disconn_fun_to_sub();
LevinReduction orbit_to_disconnfun();
LevinReduction disconnfun_to_orbit();
LevinReduction halftruth_to_disconn();
LevinReduction truth_to_nondense();
LevinReduction truth_to_poatom();
LevinReduction truth_to_tr2();
LevinReduction bddseq_omega_to_q();
LevinReduction bddseq_q_to_r();
LevinReduction bddseq_r_to_omega();

}  // namespace reductions

const std::vector<CatalogEntry>& catalog_entries();
std::optional<LevinReduction> find_reduction(const std::string& id);
// Entries whose id or group equals `name`.
std::vector<CatalogEntry> select_entries(const std::string& name);

// b = ceil(|q_0|) + 2, the bound used by qpre_to_conv.
Nat qpre_scale(const Rational& q0);

}  // namespace levin
