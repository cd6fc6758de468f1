#include "cayspar/json_io.hpp"

#include <cmath>

namespace cayspar {

nlohmann::json json_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

nlohmann::json to_json(const ImportanceProfile& profile) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& r : profile.perRep)
        per.push_back({{"rep", r.rep},
                       {"involution", r.involution},
                       {"weight", r.weight},
                       {"imp", json_number(r.imp)},
                       {"p", json_number(r.p)}});
    return {{"eps", profile.eps},
            {"bigC", profile.bigC},
            {"logTerm", profile.logTerm},
            {"perRep", std::move(per)}};
}

nlohmann::json to_json(const SparsifierResult& result, const GroupTable& g) {
    nlohmann::json kept = nlohmann::json::array();
    for (const auto& k : result.kept) kept.push_back({{"elem", k.elem}, {"weight", k.weight}});
    nlohmann::json j{{"kept", std::move(kept)},
                     {"keptPairCount", result.kept_pair_count(g)},
                     {"keptGeneratorCount", int(result.kept.size())},
                     {"seed", result.seed},
                     {"eps", result.requestedEps},
                     {"directed", result.directed},
                     {"profile", to_json(result.profile)}};
    if (result.certificate)
        j["certificate"] = {{"lambdaMin", json_number(result.certificate->first)},
                            {"lambdaMax", json_number(result.certificate->second)}};
    else
        j["certificate"] = nullptr;
    return j;
}

nlohmann::json to_json(const VerifyReport& report) {
    const char* kind = report.kind == VerifyKind::Spectral ? "spectral"
                       : report.kind == VerifyKind::CutExhaustive ? "cutExhaustive"
                                                                  : "cutSampled";
    nlohmann::json j{{"kind", kind},
                     {"pass", report.pass},
                     {"eps", report.eps},
                     {"worstLow", json_number(report.worstLow)},
                     {"worstHigh", json_number(report.worstHigh)},
                     {"trials", report.trials}};
    if (report.witnessCut) j["witnessCut"] = *report.witnessCut;
    if (report.witnessVector) {
        nlohmann::json v = nlohmann::json::array();
        for (int i = 0; i < report.witnessVector->size(); ++i)
            v.push_back(json_number((*report.witnessVector)[i]));
        j["witnessVector"] = std::move(v);
    }
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

nlohmann::json to_json(const AndGadget& gadget, const std::string& groupLabel, bool verified) {
    nlohmann::json monomials = nlohmann::json::array();
    for (const auto& m : gadget.equation.monomials)
        monomials.push_back({{"coeff", m.coeff}, {"var", m.var}, {"sign", m.sign}});
    return {{"group", groupLabel},
            {"r", gadget.arity},
            {"K", gadget.equation.varCount},
            {"monomials", std::move(monomials)},
            {"pi", gadget.pi},
            {"baseElements", gadget.baseElements},
            {"witnesses", gadget.witnesses},
            {"verified", verified}};
}

}  // namespace cayspar
