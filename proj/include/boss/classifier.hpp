#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "boss/label.hpp"

namespace boss {

/// Features in [0, 1]; binary verdicts are 0 or 1.
using VerdictVector = std::vector<double>;

struct Prediction {
    double score = 0.0;
    Label label = Label::ham;  // spam iff score > 0
};

class ModelFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PerceptronOptions {
    std::size_t dimension = 100;
    double learning_rate = 0.01;
    bool self_train = false;
    double self_train_margin = 0.5;
};

/// Single perceptron combining verdict features into a spam/ham decision,
/// trained online with the mistake-driven rule.
class Perceptron {
public:
    using Options = PerceptronOptions;

    Perceptron() : Perceptron(Options{}) {}
    explicit Perceptron(Options options);

    /// Throws std::invalid_argument on width mismatch or a feature outside [0, 1].
    Prediction predict(std::span<const double> x) const;

    /// Returns true if the weights changed.
    ///
    /// Unknown labels are ignored unless self-training is on, in which case a
    /// prediction with |score| > margin stands in for the label.
    bool train_step(std::span<const double> x, Label y);

    std::size_t dimension() const noexcept { return weights_.size(); }
    const Options& options() const noexcept { return options_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double bias() const noexcept { return bias_; }

    void set_parameters(std::vector<double> weights, double bias);

    /// Header line "<dimension> <learning_rate>", then the weights and the
    /// bias, one per line.
    void save(std::ostream& out) const;
    static Perceptron load(std::istream& in, Options options = {});

    friend bool operator==(const Perceptron& a, const Perceptron& b) noexcept {
        return a.weights_ == b.weights_ && a.bias_ == b.bias_;
    }

private:
    void check_input(std::span<const double> x) const;

    Options options_;
    std::vector<double> weights_;
    double bias_ = 0.0;
};

}  // namespace boss
