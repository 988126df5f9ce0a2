#include "mipt.h"

#include <cstring>
#include <new>
#include <vector>

#include "harness.hpp"
#include "statmech.hpp"
#include "tableau.hpp"

using mipt::StabilizerTableau;

struct mipt_tableau {
  StabilizerTableau impl;
};

extern "C" {

mipt_tableau* mipt_tableau_create(uint32_t q, size_t n_sites) {
  try {
    auto* t = new mipt_tableau{StabilizerTableau(q, 0, n_sites)};
    for (size_t i = 0; i < n_sites; ++i) t->impl.append_plus_site();
    return t;
  } catch (...) {
    return nullptr;
  }
}

void mipt_tableau_destroy(mipt_tableau* t) { delete t; }

int mipt_tableau_apply_cp(mipt_tableau* t, size_t i, size_t j, uint32_t w) {
  if (t == nullptr || i >= t->impl.n_sites() || j >= t->impl.n_sites())
    return MIPT_ERR_INVALID;
  try {
    t->impl.apply_cp(i, j, w);
    return MIPT_OK;
  } catch (...) {
    return MIPT_ERR_INVALID;
  }
}

int mipt_tableau_measure(mipt_tableau* t, size_t site, uint32_t a,
                         uint32_t b) {
  if (t == nullptr || site >= t->impl.n_sites() || (a % t->impl.q()) + (b % t->impl.q()) == 0)
    return -MIPT_ERR_INVALID;
  try {
    return t->impl.measure({site, a % t->impl.q(), b % t->impl.q()}) ? 1 : 0;
  } catch (...) {
    return -MIPT_ERR_INVALID;
  }
}

long mipt_tableau_entropy(const mipt_tableau* t, const size_t* sites,
                          size_t n_sites) {
  if (t == nullptr || (sites == nullptr && n_sites != 0))
    return -MIPT_ERR_INVALID;
  for (size_t k = 0; k < n_sites; ++k)
    if (sites[k] >= t->impl.n_sites()) return -MIPT_ERR_INVALID;
  try {
    return static_cast<long>(
        t->impl.entropy(std::span<const size_t>(sites, n_sites)));
  } catch (...) {
    return -MIPT_ERR_INVALID;
  }
}

int mipt_couplings(double q, double* j_vert, double* j_horiz) {
  try {
    const double jv = mipt::coupling_jvert(q);
    const double jh = mipt::coupling_jhoriz(q);
    if (j_vert != nullptr) *j_vert = jv;
    if (j_horiz != nullptr) *j_horiz = jh;
    return MIPT_OK;
  } catch (...) {
    return MIPT_ERR_INVALID;
  }
}

int mipt_run_config(const char* config_text, char* errbuf, size_t errbuf_len) {
  const auto report = [&](const std::string& msg) {
    if (errbuf != nullptr && errbuf_len > 0) {
      const size_t n = std::min(errbuf_len - 1, msg.size());
      std::memcpy(errbuf, msg.data(), n);
      errbuf[n] = '\0';
    }
  };
  if (config_text == nullptr) {
    report("null config");
    return MIPT_ERR_CONFIG;
  }
  try {
    std::string error;
    const int rc = mipt::run_config_text(config_text, error);
    if (rc != 0) report(error);
    return rc;
  } catch (const std::exception& e) {
    report(e.what());
    return MIPT_ERR_CONFIG;
  } catch (...) {
    report("unknown error");
    return MIPT_ERR_CONFIG;
  }
}

const char* mipt_version(void) { return mipt::version_string(); }

}  // extern "C"
