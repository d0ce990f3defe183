"""Print the Table 1 / Table 2 reproduction on the bundled fixtures."""
from healthadvisor import data_path
from healthadvisor.concept_graph import build_graph, load_rules, read_corpus
from healthadvisor.pipeline import batch_recommend, load_aliases
from healthadvisor.risk_classifier import predict_risks, read_dataset, read_profiles, train_tree
from healthadvisor.wearable_catalog import bundled_catalog, extend_graph, gap_report


def main():
    tree = train_tree(read_dataset(data_path("table1.csv")))
    profiles = read_profiles(data_path("table1_profiles.csv"))
    catalog = bundled_catalog()
    graph = extend_graph(build_graph(read_corpus(data_path("corpus")), load_rules(data_path("rules.json"))), catalog)

    print("person  risk vector")
    for p in profiles:
        risks = ", ".join(f"{c}: {pr:.2f}" for c, pr in predict_risks(tree, p))
        print(f"{p.person_id:<7} {risks}")

    print("\nperson  conditions -> wearables")
    for rec in batch_recommend(profiles, tree, graph, catalog, aliases=load_aliases()):
        print(f"{rec.profile_id:<7} {', '.join(rec.conditions)} -> {', '.join(rec.wearables) or '-'}")
        if rec.unmet_measurements:
            print(f"        unmet: {', '.join(rec.unmet_measurements)}")

    print("\ngap report (no demand recorded)")
    print(gap_report(graph).to_csv(), end="")


if __name__ == "__main__":
    main()
