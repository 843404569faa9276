"""A quick tour of the shipped environments and their demonstrations."""

from procsearch import make_task, write_demo_file
from procsearch.envs.craft import ISLAND_MAP
from procsearch.envs.piano import notes_only_view


def main():
    print("island map:")
    print(ISLAND_MAP)
    for name in ("chain", "scripted", "island", "gem", "cpr", "piano"):
        task = make_task(name)
        env = task.env()
        demo = task.demo()
        sk = demo.sketch
        stats = f"H={demo.horizon:<4}|A|={env.n_actions:<3}"
        if sk is not None:
            stats += f" L={len(sk):<3}|B|={len(sk.labels)}"
        print(f"{name:<9} {stats}")

    piano = make_task("piano")
    demo = piano.demo()
    notes = notes_only_view(demo).observations
    print(f"\npiano trace: {demo.horizon} observations, of which {len(notes)} are notes")
    print("first bar of the piece:", " ".join(notes[:8]))

    cpr = make_task("cpr")
    text = write_demo_file(cpr.demo(), cpr.env().n_actions)
    print("\ncpr demonstration file starts with:")
    print("\n".join(text.splitlines()[:5]))
    print(f"...and ends with the sketch trailer: {text.splitlines()[-1]}")


if __name__ == "__main__":
    main()
