#include "boss/classifier.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace boss {

Perceptron::Perceptron(Options options) : options_(options), weights_(options.dimension, 0.0) {
    if (options_.dimension == 0) throw std::invalid_argument("perceptron dimension must be positive");
    if (!(options_.learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
    if (!(options_.self_train_margin > 0.0)) throw std::invalid_argument("self-train margin must be positive");
}

void Perceptron::check_input(std::span<const double> x) const {
    if (x.size() != weights_.size()) {
        throw std::invalid_argument("verdict vector width " + std::to_string(x.size()) +
                                    " does not match model width " + std::to_string(weights_.size()));
    }
    for (const double f : x) {
        if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("verdict feature outside [0, 1]");
    }
}

Prediction Perceptron::predict(std::span<const double> x) const {
    check_input(x);
    double score = bias_;
    for (std::size_t i = 0; i < weights_.size(); ++i) score += weights_[i] * x[i];
    return {score, score > 0.0 ? Label::spam : Label::ham};
}

bool Perceptron::train_step(std::span<const double> x, Label y) {
    const Prediction p = predict(x);
    if (y == Label::unknown) {
        if (!options_.self_train || !(std::abs(p.score) > options_.self_train_margin)) return false;
        y = p.label;
    }
    if (p.label == y) return false;

    const double step = options_.learning_rate * (y == Label::spam ? 1.0 : -1.0);
    for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] += step * x[i];
    bias_ += step;
    return true;
}

void Perceptron::set_parameters(std::vector<double> weights, double bias) {
    if (weights.size() != weights_.size()) throw std::invalid_argument("weight vector width mismatch");
    weights_ = std::move(weights);
    bias_ = bias;
}

void Perceptron::save(std::ostream& out) const {
    std::ostringstream s;
    s.precision(std::numeric_limits<double>::max_digits10);
    s << weights_.size() << ' ' << options_.learning_rate << '\n';
    for (const double w : weights_) s << w << '\n';
    s << bias_ << '\n';
    out << s.str();
}

Perceptron Perceptron::load(std::istream& in, Options options) {
    std::string line;
    if (!std::getline(in, line)) throw ModelFormatError("missing model header");
    std::istringstream header(line);
    std::size_t dimension = 0;
    double rate = 0.0;
    if (!(header >> dimension >> rate) || dimension == 0 || !(rate > 0.0)) {
        throw ModelFormatError("model header must be '<dimension> <learning_rate>'");
    }
    options.dimension = dimension;
    options.learning_rate = rate;

    std::vector<double> values;
    values.reserve(dimension + 1);
    while (values.size() < dimension + 1 && std::getline(in, line)) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(line, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != line.size() || !std::isfinite(v)) {
            throw ModelFormatError("bad weight on line " + std::to_string(values.size() + 2));
        }
        values.push_back(v);
    }
    if (values.size() != dimension + 1) throw ModelFormatError("model truncated");

    Perceptron model(options);
    const double bias = values.back();
    values.pop_back();
    model.set_parameters(std::move(values), bias);
    return model;
}

}  // namespace boss
