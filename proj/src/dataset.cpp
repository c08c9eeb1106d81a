#include "intent/dataset.hpp"

#include <set>
#include <string_view>

#include "intent/error.hpp"

namespace intent {

std::array<std::size_t, 3> LabeledDataset::class_counts() const {
    std::array<std::size_t, 3> counts{};
    for (const DatasetRow& row : rows) {
        int index = class_index(row.label);
        if (index >= 0) ++counts[static_cast<std::size_t>(index)];
    }
    return counts;
}

std::size_t LabeledDataset::classes_present() const {
    std::size_t present = 0;
    for (std::size_t count : class_counts()) present += count > 0 ? 1 : 0;
    return present;
}

LabeledDataset make_dataset(const std::vector<FeatureRow>& rows, Granularity granularity) {
    LabeledDataset dataset;
    dataset.granularity = granularity;
    std::set<std::string_view> seen;
    for (const FeatureRow& row : rows) {
        if (!row.label || *row.label == IntentLabel::Ambiguous) continue;
        if (!seen.insert(row.unit_id).second) {
            throw ValidationError("duplicate unit id '" + row.unit_id + "'");
        }
        dataset.rows.push_back(DatasetRow{row.unit_id, row.features, *row.label});
    }
    return dataset;
}

} // namespace intent
