#pragma once

#include "hsbrst/errors.hpp"
#include "hsbrst/grading.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hsbrst {

using GenId = std::uint32_t;
inline constexpr GenId kNoGen = std::numeric_limits<GenId>::max();

enum class Sector { L, R, matter, derived };

inline const char* sector_name(Sector s) {
    switch (s) {
        case Sector::L: return "L";
        case Sector::R: return "R";
        case Sector::matter: return "matter";
        case Sector::derived: return "derived";
    }
    return "?";
}

/// A graded generator symbol. Derived generators record the base symbol a
/// formal derivative was applied to and the nesting depth.
struct Generator {
    std::string name;
    Sector sector = Sector::L;
    Grading grading;
    GenId conj = kNoGen;  // tilde-conjugate image
    GenId base = kNoGen;  // set for derived generators
    int depth = 0;        // formal-derivative nesting

    bool is_derived() const { return base != kNoGen; }
};

/// Immutable registry of generator symbols. Formal D++ images are
/// pre-registered up to the depth bound at construction; requesting a deeper
/// one is a DepthError at use time.
class Alphabet {
  public:
    static constexpr int kDerivedDepthBound = 2;

    /// Grading of the formal harmonic derivative D++.
    static Grading dpp_grading() { return {0, 0, 2}; }

    GenId add(std::string name, Sector sector, Grading grading, std::string conj_name = "") {
        if (index_.count(name)) throw ConfigError("duplicate generator name: " + name);
        GenId id = static_cast<GenId>(gens_.size());
        Generator g;
        g.name = name;
        g.sector = sector;
        g.grading = grading;
        gens_.push_back(std::move(g));
        index_[name] = id;
        pending_conj_.emplace_back(id, conj_name.empty() ? name : std::move(conj_name));
        return id;
    }

    /// Resolve conjugation names and close under D++ to the depth bound.
    void finalize() {
        for (auto& [id, cname] : pending_conj_) {
            auto it = index_.find(cname);
            if (it == index_.end()) throw ConfigError("unknown conj_image '" + cname + "' for " + gens_[id].name);
            gens_[id].conj = it->second;
        }
        pending_conj_.clear();
        std::size_t bases = gens_.size();
        // depth-1 then depth-2 images, in declaration order
        for (int d = 1; d <= kDerivedDepthBound; ++d) {
            std::size_t upto = gens_.size();
            for (GenId id = 0; id < upto; ++id) {
                if (gens_[id].depth != d - 1) continue;
                GenId nid = static_cast<GenId>(gens_.size());
                Generator g;
                g.name = "Dpp(" + gens_[id].name + ")";
                g.sector = Sector::derived;
                g.grading = gens_[id].grading + dpp_grading();
                g.base = id;
                g.depth = d;
                gens_.push_back(std::move(g));
                index_[gens_[nid].name] = nid;
            }
        }
        // conjugates of derived generators follow the base: ~Dpp(x) = Dpp(~x)
        for (GenId id = static_cast<GenId>(bases); id < gens_.size(); ++id) {
            const Generator& g = gens_[id];
            GenId cb = gens_[g.base].conj;
            gens_[id].conj = index_.at("Dpp(" + gens_[cb].name + ")");
        }
        finalized_ = true;
    }

    bool finalized() const { return finalized_; }

    const Generator& gen(GenId id) const { return gens_[id]; }
    std::size_t size() const { return gens_.size(); }

    bool has(const std::string& name) const { return index_.count(name) != 0; }
    GenId id_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw ConfigError("unknown generator: " + name);
        return it->second;
    }

    /// D++ image of a generator; throws DepthError past the bound.
    GenId derived_of(GenId id) const {
        auto it = index_.find("Dpp(" + gens_[id].name + ")");
        if (it == index_.end())
            throw DepthError("formal derivative depth bound (" + std::to_string(kDerivedDepthBound) +
                             ") exceeded at Dpp(" + gens_[id].name + ")");
        return it->second;
    }

    /// Sector with derived generators attributed to their base symbol.
    Sector effective_sector(GenId id) const {
        while (gens_[id].is_derived()) id = gens_[id].base;
        return gens_[id].sector;
    }

    std::vector<GenId> base_ids() const {
        std::vector<GenId> out;
        for (GenId i = 0; i < gens_.size(); ++i)
            if (!gens_[i].is_derived()) out.push_back(i);
        return out;
    }
    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& g : gens_) out.push_back(g.name);
        return out;
    }

  private:
    std::vector<Generator> gens_;
    std::map<std::string, GenId> index_;
    std::vector<std::pair<GenId, std::string>> pending_conj_;
    bool finalized_ = false;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// The gauge/ghost/matter alphabet shared by every gauge of the model.
/// Grading table: V(0,0,+2), b(0,0,0), c(1,+1,0), cbar(1,-1,0),
/// q,qbar(0,0,+1), Lam(0,0,0). Matter fields conjugate into each other;
/// all other symbols are self-conjugate.
inline AlphabetPtr make_brst_alphabet() {
    auto a = std::make_shared<Alphabet>();
    a->add("V_L", Sector::L, {0, 0, 2});
    a->add("V_R", Sector::R, {0, 0, 2});
    a->add("c_L", Sector::L, {1, 1, 0});
    a->add("c_R", Sector::R, {1, 1, 0});
    a->add("cbar_L", Sector::L, {1, -1, 0});
    a->add("cbar_R", Sector::R, {1, -1, 0});
    a->add("b_L", Sector::L, {0, 0, 0});
    a->add("b_R", Sector::R, {0, 0, 0});
    a->add("q", Sector::matter, {0, 0, 1}, "qbar");
    a->add("qbar", Sector::matter, {0, 0, 1}, "q");
    a->add("Lam_L", Sector::L, {0, 0, 0});
    a->add("Lam_R", Sector::R, {0, 0, 0});
    a->finalize();
    return a;
}

} // namespace hsbrst
