#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bilens/dnf.hpp"
#include "bilens/dnf_lens.hpp"
#include "bilens/language_cache.hpp"
#include "bilens/lens.hpp"

namespace bilens {

// Example labels: an example's index, extended by the piece index each time
// the example descends under a star.
using IntList = std::vector<int>;
using IlSet = std::set<IntList>;

struct LabelledString {
  std::string text;
  IntList label;
};
using Sils = std::vector<LabelledString>;

// Groups type names related by library lenses between two named types. Each
// group has a representative; strings of any member can be mapped into the
// representative's format.
class VarClasses {
 public:
  VarClasses() = default;
  VarClasses(const LensLibrary& lib, const Definitions& defs);

  const std::string& representative(const std::string& name) const;
  bool related(const std::string& a, const std::string& b) const;
  // nullopt for identical names; throws when the names are unrelated.
  std::optional<Lens> lens_between(const std::string& from, const std::string& to) const;
  std::string canonical(const std::string& name, std::string_view s);
  StarDepthSet canonical(const StarDepthSet& pairs) const;

 private:
  const LensLibrary* lib_ = nullptr;
  Definitions defs_;
  std::map<std::string, std::string> rep_;
  std::map<std::string, Lens> to_rep_;
  std::map<std::pair<std::string, std::string>, Lens> direct_;
  std::map<std::string, std::unique_ptr<LensRunner>> runners_;
};

struct ExampledDnf;

struct ExampledAtom {
  const Atom* atom = nullptr;
  IlSet ils;
  std::shared_ptr<ExampledDnf> body;                      // star atoms
  std::string klass;                                      // var atoms: class representative
  std::vector<std::pair<IntList, std::string>> contents;  // var atoms: canonical example pieces
};

struct ExampledSeq {
  const Sequence* seq = nullptr;
  IlSet ils;
  std::vector<ExampledAtom> atoms;
  std::vector<std::size_t> order;  // atom indices in ascending order
};

struct ExampledDnf {
  const DnfRegex* dnf = nullptr;
  IlSet ils;
  std::vector<ExampledSeq> seqs;
  std::vector<std::size_t> order;  // sequence indices in ascending order
};

// Threads labelled strings through d; the result points into d.
class Embedder {
 public:
  Embedder(LanguageCache& cache, VarClasses& classes) : cache_(cache), classes_(classes) {}
  ExampledDnf embed(const DnfRegex& d, const Sils& sils);

 private:
  ExampledSeq embed_seq(const Sequence& sq, const Sils& sils);
  ExampledAtom embed_atom(const Atom& a, const Sils& sils);

  LanguageCache& cache_;
  VarClasses& classes_;
};

ExampledDnf embed_examples(const DnfRegex& d, const Sils& labelled, const Definitions& defs);

std::weak_ordering cmp_exampled(const ExampledAtom& x, const ExampledAtom& y);
std::weak_ordering cmp_exampled(const ExampledSeq& x, const ExampledSeq& y);
std::weak_ordering cmp_exampled(const ExampledDnf& x, const ExampledDnf& y);

// Aligns two exampled DNFs by their orderings; nullopt when they differ.
std::optional<DnfLens> rigid_synth_exampled(const ExampledDnf& src, const ExampledDnf& tgt,
                                            const VarClasses& classes);

}  // namespace bilens
