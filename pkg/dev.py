from XiBounds import XiBounds
from XiBounds.bounds import epsilon_t, g_t
from XiBounds.models import BoundParams

reader = XiBounds()
reader.read_manifest("samples/tables.manifest")
print("Labels: ", reader.get_labels())
print("N(100): ", reader.count_up_to("100"))
print("Sum at (0.7, 14.134725142): ", reader.sum_at("0.7", "14.134725142"))

# print("Threshold (lemma_consistent): ", reader.get_threshold())
# print("Threshold (as_printed): ", reader.get_threshold("as_printed"))
# print("Threshold (composed): ", reader.get_threshold("composed"))

print("g(1e8): ", g_t(1e8, BoundParams.default()))
print("epsilon(3.11e10): ", epsilon_t(3.11e10))
