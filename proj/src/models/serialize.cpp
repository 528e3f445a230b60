#include "star_sense/models/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "star_sense/core/error.hpp"
#include "star_sense/models/boosting.hpp"
#include "star_sense/models/forest.hpp"
#include "star_sense/models/knn.hpp"
#include "star_sense/models/svm.hpp"

namespace starsense::models {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json tree_to_json(const Tree& tree) {
    json nodes = json::array();
    for (const TreeNode& node : tree.nodes) {
        json entry = {node.feature, node.threshold, node.left,   node.right,
                      node.value,   node.gain,      node.n_samples};
        if (!node.class_dist.empty()) entry.push_back(node.class_dist);
        nodes.push_back(std::move(entry));
    }
    return nodes;
}

Tree tree_from_json(const json& nodes) {
    Tree tree;
    for (const auto& entry : nodes) {
        TreeNode node;
        node.feature = entry.at(0).get<int>();
        node.threshold = entry.at(1).get<double>();
        node.left = entry.at(2).get<int>();
        node.right = entry.at(3).get<int>();
        node.value = entry.at(4).get<double>();
        node.gain = entry.at(5).get<double>();
        node.n_samples = entry.at(6).get<std::uint32_t>();
        if (entry.size() > 7) node.class_dist = entry.at(7).get<std::vector<double>>();
        tree.nodes.push_back(std::move(node));
    }
    return tree;
}

json forest_to_json(const std::vector<Tree>& forest) {
    json out = json::array();
    for (const Tree& tree : forest) out.push_back(tree_to_json(tree));
    return out;
}

std::vector<Tree> forest_from_json(const json& j) {
    std::vector<Tree> forest;
    for (const auto& tree : j) forest.push_back(tree_from_json(tree));
    return forest;
}

json matrix_to_json(const Matrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix matrix_from_json(const json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    m.data() = j.at("data").get<std::vector<double>>();
    if (m.data().size() != m.rows() * m.cols())
        throw SerializationError("matrix payload size mismatch");
    return m;
}

json scaler_to_json(const Scaler& s) { return {{"means", s.means}, {"sds", s.sds}}; }

Scaler scaler_from_json(const json& j) {
    Scaler s;
    s.means = j.at("means").get<std::vector<double>>();
    s.sds = j.at("sds").get<std::vector<double>>();
    return s;
}

}  // namespace

std::string model_to_string(const TrainedModel& model) {
    json j;
    j["format"] = "star-sense-model";
    j["version"] = kFormatVersion;
    j["algorithm"] = to_string(model.spec().algorithm);
    j["task"] = to_string(model.spec().task);
    j["seed"] = model.spec().seed;
    j["hyperparams"] = model.spec().hyperparams;
    j["feature_names"] = model.feature_names();

    json state;
    if (const auto* knn = dynamic_cast<const KnnModel*>(&model)) {
        state["k"] = knn->k;
        state["scaler"] = scaler_to_json(knn->scaler);
        state["train_x"] = matrix_to_json(knn->train_x);
        state["train_y"] = knn->train_y;
    } else if (const auto* cart = dynamic_cast<const CartModel*>(&model)) {
        state["forest"] = forest_to_json(cart->forest);
    } else if (const auto* rf = dynamic_cast<const ForestModel*>(&model)) {
        state["forest"] = forest_to_json(rf->forest);
    } else if (const auto* boosted = dynamic_cast<const BoostedModel*>(&model)) {
        state["forest"] = forest_to_json(boosted->forest);
        state["class_labels"] = boosted->class_labels;
        state["base_score"] = boosted->base_score;
        state["learning_rate"] = boosted->learning_rate;
    } else if (const auto* svm = dynamic_cast<const SvmModel*>(&model)) {
        state["scaler"] = scaler_to_json(svm->scaler);
        state["use_rff"] = svm->use_rff;
        state["rff_weights"] = matrix_to_json(svm->rff_weights);
        state["rff_offsets"] = svm->rff_offsets;
        state["class_labels"] = svm->class_labels;
        state["weights"] = matrix_to_json(svm->weights);
        state["y_mean"] = svm->y_mean;
    } else {
        throw SerializationError("unknown model type");
    }
    j["state"] = std::move(state);
    return j.dump();
}

std::unique_ptr<TrainedModel> model_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SerializationError(std::string("invalid model file: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "star-sense-model")
            throw SerializationError("not a star-sense model file");
        if (j.at("version").get<int>() != kFormatVersion)
            throw SerializationError("unsupported model format version");

        ModelSpec spec;
        spec.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
        spec.task = task_from_string(j.at("task").get<std::string>());
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.hyperparams = j.at("hyperparams").get<std::map<std::string, double>>();
        auto feature_names = j.at("feature_names").get<std::vector<std::string>>();
        const json& state = j.at("state");

        switch (spec.algorithm) {
            case Algorithm::knn: {
                auto model = std::make_unique<KnnModel>(spec, feature_names);
                model->k = state.at("k").get<std::size_t>();
                model->scaler = scaler_from_json(state.at("scaler"));
                model->train_x = matrix_from_json(state.at("train_x"));
                model->train_y = state.at("train_y").get<std::vector<double>>();
                return model;
            }
            case Algorithm::cart: {
                auto model = std::make_unique<CartModel>(spec, feature_names);
                model->forest = forest_from_json(state.at("forest"));
                return model;
            }
            case Algorithm::random_forest: {
                auto model = std::make_unique<ForestModel>(spec, feature_names);
                model->forest = forest_from_json(state.at("forest"));
                return model;
            }
            case Algorithm::gbm:
            case Algorithm::xgb_tree: {
                std::unique_ptr<BoostedModel> model;
                if (spec.algorithm == Algorithm::gbm) model = std::make_unique<GbmModel>(spec, feature_names);
                else model = std::make_unique<XgbModel>(spec, feature_names);
                model->forest = forest_from_json(state.at("forest"));
                model->class_labels = state.at("class_labels").get<std::vector<int>>();
                model->base_score = state.at("base_score").get<double>();
                model->learning_rate = state.at("learning_rate").get<double>();
                return model;
            }
            case Algorithm::svm_linear:
            case Algorithm::svm_rbf_approx: {
                auto model = std::make_unique<SvmModel>(spec, feature_names);
                model->scaler = scaler_from_json(state.at("scaler"));
                model->use_rff = state.at("use_rff").get<bool>();
                model->rff_weights = matrix_from_json(state.at("rff_weights"));
                model->rff_offsets = state.at("rff_offsets").get<std::vector<double>>();
                model->class_labels = state.at("class_labels").get<std::vector<int>>();
                model->weights = matrix_from_json(state.at("weights"));
                model->y_mean = state.at("y_mean").get<double>();
                return model;
            }
        }
        throw SerializationError("unhandled algorithm in model file");
    } catch (const json::exception& e) {
        throw SerializationError(std::string("malformed model file: ") + e.what());
    }
}

void save_model(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << model_to_string(model);
}

std::unique_ptr<TrainedModel> load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return model_from_string(ss.str());
}

}  // namespace starsense::models
