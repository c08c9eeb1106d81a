#ifndef INTENT_DATASET_HPP
#define INTENT_DATASET_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "intent/features.hpp"
#include "intent/log_model.hpp"

namespace intent {

struct DatasetRow {
    std::string unit_id;
    FeatureVector features;
    IntentLabel label = IntentLabel::Informational;

    bool operator==(const DatasetRow&) const = default;
};

// Training/evaluation table. Rows never carry Ambiguous labels and unit
// ids are unique.
struct LabeledDataset {
    Granularity granularity = Granularity::Mission;
    std::vector<DatasetRow> rows;

    // Per-class row counts in kTrainingClasses order.
    std::array<std::size_t, 3> class_counts() const;
    std::size_t classes_present() const;
};

// Keeps only labeled, non-Ambiguous rows. Throws on duplicate unit ids.
LabeledDataset make_dataset(const std::vector<FeatureRow>& rows, Granularity granularity);

} // namespace intent

#endif
