#include "mvno/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mvno {

ByteClassifier::ByteClassifier(size_t feature_len, uint64_t seed)
    : feature_len_(feature_len), seed_(seed), w_(feature_len, 0.0) {}

std::vector<double> ByteClassifier::features(ByteSpan sample) const {
    std::vector<double> f(feature_len_, 0.0);
    size_t n = std::min(feature_len_, sample.size());
    for (size_t i = 0; i < n; i++) f[i] = sample[i] / 255.0 - 0.5;
    return f;
}

void ByteClassifier::train(const std::vector<Bytes>& class0, const std::vector<Bytes>& class1,
                           int epochs) {
    std::vector<std::pair<const Bytes*, int>> data;
    for (const auto& s : class0) data.emplace_back(&s, 0);
    for (const auto& s : class1) data.emplace_back(&s, 1);

    std::mt19937_64 gen(seed_);
    const double lr = 0.05;
    for (int e = 0; e < epochs; e++) {
        std::shuffle(data.begin(), data.end(), gen);
        for (auto& [s, label] : data) {
            auto f = features(ByteSpan(s->data(), s->size()));
            double z = bias_;
            for (size_t i = 0; i < feature_len_; i++) z += w_[i] * f[i];
            double p = 1.0 / (1.0 + std::exp(-z));
            double g = p - label;
            bias_ -= lr * g;
            for (size_t i = 0; i < feature_len_; i++) w_[i] -= lr * g * f[i];
        }
    }
}

int ByteClassifier::predict(ByteSpan sample) const {
    auto f = features(sample);
    double z = bias_;
    for (size_t i = 0; i < feature_len_; i++) z += w_[i] * f[i];
    return z > 0 ? 1 : 0;
}

double ByteClassifier::accuracy(const std::vector<Bytes>& class0,
                                const std::vector<Bytes>& class1) const {
    size_t correct = 0, total = class0.size() + class1.size();
    for (const auto& s : class0)
        if (predict(ByteSpan(s.data(), s.size())) == 0) correct++;
    for (const auto& s : class1)
        if (predict(ByteSpan(s.data(), s.size())) == 1) correct++;
    return total ? double(correct) / double(total) : 0.0;
}

double byte_agreement(ByteSpan a, ByteSpan b) {
    size_t n = std::min(a.size(), b.size());
    if (n == 0) return 0.0;
    size_t same = 0;
    for (size_t i = 0; i < n; i++) same += (a[i] == b[i]);
    return double(same) / double(n);
}

}  // namespace mvno
