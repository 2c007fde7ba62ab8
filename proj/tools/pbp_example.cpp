// Emits a ready-to-edit boundary-problem instance on stdout, in the format
// accepted by `slaglab pbp decide`. Pick a template by name:
//
//   pbp-example disk2    flat disk data in dimension 2 (solvable at Maslov 0)
//   pbp-example lift3    dimension 3 with a rank-2 boundary group
//   pbp-example su5      dimension 5 with the degree-3 block filled in
//
// The output validates against schemas/pbp-instance.schema.json.

#include <json.hpp>

#include <iostream>
#include <string>

using Json = nlohmann::ordered_json;

namespace {

Json group(int rank, std::initializer_list<long long> torsion = {}) {
    Json g;
    g["rank"] = rank;
    g["torsion"] = torsion;
    return g;
}

Json common(int n) {
    Json j;
    j["version"] = 1;
    j["n"] = n;
    j["sigma_connected"] = true;
    j["l_orientable"] = true;
    j["exact_data"] = true;
    return j;
}

Json disk2() {
    Json j = common(2);
    j["h1_L"] = group(0);
    j["h1_Sigma"] = group(1);
    j["i1"]["matrix"] = Json::array({Json::array()});
    j["maslov_class"] = {0};
    j["h1_rel"] = group(0);
    return j;
}

Json lift3() {
    Json j = common(3);
    j["h1_L"] = group(1);
    j["h1_Sigma"] = group(2);
    j["i1"]["matrix"] = {{1}, {0}};
    j["maslov_class"] = {1, 0};
    j["h1_rel"] = group(1);
    return j;
}

Json su5() {
    Json j = common(5);
    j["h1_L"] = group(0);
    j["h1_Sigma"] = group(0);
    j["i1"]["matrix"] = Json::array();
    j["maslov_class"] = Json::array();
    j["h3_L"] = group(1);
    j["h3_Sigma"] = group(2);
    j["i3"]["matrix"] = {{1}, {0}};
    j["su_class"] = {1, 0};
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    std::string kind = argc > 1 ? argv[1] : "disk2";
    Json j;
    if (kind == "disk2")
        j = disk2();
    else if (kind == "lift3")
        j = lift3();
    else if (kind == "su5")
        j = su5();
    else {
        std::cerr << "unknown template '" << kind
                  << "'; choose disk2, lift3, or su5\n";
        return 2;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}
