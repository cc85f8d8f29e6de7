#ifndef MRDKIT_JSON_IO_HPP
#define MRDKIT_JSON_IO_HPP

// JSON wire formats shared by the CLI and the test suite.
//   context:     {"p":3,"e":1,"n":2,"base_poly":[0,1],"ext_poly":[1,0,1]}
//   matrix:      {"m":2,"n":2,"entries":[[0,1],[1,0]]}   (canonical F_q codes)
//   code file:   {"ctx":{...},"m":2,"n":2,"generators":[matrix,...]}
//   certificate: {"params":{"i":4,"h":1,"j":0},"A_sym":m,"B_sym":m,
//                 "P":m,"Q":m,"code":code-file}

#include <json.hpp>

#include "mrdkit/selfdual.hpp"

namespace mrdkit {

using json = nlohmann::json;

json ctx_to_json(const FieldCtx& ctx);
std::shared_ptr<const FieldCtx> ctx_from_json(const json& j);

json mat_to_json(const MatFq& m);
MatFq mat_from_json(const FieldCtx& ctx, const json& j);

// Elements as nested coefficient arrays: Fp [v], Fq [c0..c_{e-1}],
// K [[...],[...]] with one F_q coefficient array per coordinate.
json elem_to_json(const FieldElem& a);

json code_to_json(const RankMetricCode& c);

struct LoadedCode {
    std::shared_ptr<const FieldCtx> ctx;
    RankMetricCode code;
};
LoadedCode code_from_json(const json& j);

json certificate_to_json(const SelfDualCertificate& cert);

struct LoadedCertificate {
    std::shared_ptr<const FieldCtx> ctx;
    u64 i, h;
    unsigned j;
    MatFq A_sym, B_sym, P, Q;
    RankMetricCode code;
};
LoadedCertificate certificate_from_json(const json& j);

}  // namespace mrdkit

#endif
