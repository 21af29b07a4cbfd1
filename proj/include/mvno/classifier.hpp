#pragma once

#include <vector>

#include "mvno/common.hpp"

namespace mvno {

// Logistic regression over raw byte features. This is the fixed, documented
// distinguisher used by the privacy experiments: if it cannot beat chance,
// the observed bytes carry no exploitable signal at this granularity.
class ByteClassifier {
  public:
    // feature_len bytes per sample (zero-padded), values scaled to [0, 1].
    ByteClassifier(size_t feature_len, uint64_t seed);

    void train(const std::vector<Bytes>& class0, const std::vector<Bytes>& class1,
               int epochs = 40);
    int predict(ByteSpan sample) const;
    double accuracy(const std::vector<Bytes>& class0, const std::vector<Bytes>& class1) const;

  private:
    std::vector<double> features(ByteSpan sample) const;
    size_t feature_len_;
    uint64_t seed_;
    std::vector<double> w_;
    double bias_ = 0.0;
};

// Share of byte positions at which two samples agree. The freshness
// invariant makes every variable field differ between sessions, so honest
// transcripts give near-zero agreement beyond format constants.
double byte_agreement(ByteSpan a, ByteSpan b);

}  // namespace mvno
