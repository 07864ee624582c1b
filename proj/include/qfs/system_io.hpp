#pragma once

#include <string>

#include "qfs/quadform.hpp"

namespace qfs {

/// Canonical textual system format: a JSON object with fields
///   dim:    integer
///   forms:  list of dim x dim matrices, entries as rational strings
///   labels: optional list of strings, one per form
/// Serialization is canonical (sorted keys, reduced rationals, trailing
/// newline) and round-trips byte-exactly.
std::string serialize_system(const QFSystem& sys);
QFSystem parse_system(const std::string& text);

QFSystem load_system(const std::string& path);
void save_system(const std::string& path, const QFSystem& sys);

/// A self-contained claim a verifier can re-check from scratch:
///  - hyperbolic_subspaces: two bases jointly spanning, each span isotropic
///    for every form of the accompanying system;
///  - idempotent: a concrete adjoint pair (phi, psi) on the m-fold amplified
///    system with phi, psi idempotent, phi + psi = 1 and the adjoint
///    relations against every amplified form;
///  - closure_form: a symmetric matrix commuting with the whole adjoint
///    algebra of the system, offered with nonzero signature.
struct WitnessRecord {
  enum class Kind { hyperbolic_subspaces, idempotent, closure_form };
  Kind kind = Kind::hyperbolic_subspaces;
  // hyperbolic_subspaces
  std::vector<QVector> u_basis, w_basis;
  // idempotent
  int amplification = 1;
  QMatrix phi, psi;
  // closure_form
  QMatrix gram;
};

std::string serialize_witness(const WitnessRecord& w);
WitnessRecord parse_witness(const std::string& text);
WitnessRecord load_witness(const std::string& path);

/// FNV-1a 64-bit digest of a byte string, rendered as 16 hex digits.
std::string content_digest(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qfs
