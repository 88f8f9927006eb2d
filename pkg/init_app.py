"""
Initialization script for RidgeRunner.
Run this once before the first batch.
"""
import os
import subprocess
import sys

SAMPLE_WORLDS = ('flat', 'ramp', 'hill', 'wall')
WORLD_DIR = 'worlds'


def install_requirements():
    """Install required packages from requirements.txt."""
    print("📦 Installing required packages...")
    try:
        subprocess.check_call([sys.executable, '-m', 'pip', 'install', '-r', 'requirements.txt'])
        print("✓ Successfully installed required packages\n")
    except subprocess.CalledProcessError as e:
        print(f"❌ Error installing packages: {str(e)}")
        sys.exit(1)


def create_env_file():
    """Create .env file with default configuration."""
    if os.path.exists('.env'):
        print("⚙️  .env file already exists, skipping...\n")
        return

    print("📝 Creating .env configuration file...")
    env_content = """# RidgeRunner Configuration
RIDGE_LOG_LEVEL=INFO

# Worker processes for episode batches
RIDGE_WORKERS=1

# Default output directory for `app.py run`
RIDGE_OUTPUT_DIR=runs
"""

    with open('.env', 'w') as f:
        f.write(env_content)

    print("✓ Created .env file\n")


def export_sample_worlds():
    """Write a few generated worlds as ASCII grids for use as file worlds."""
    print("🗺️  Exporting sample worlds...")

    try:
        from modules.grid_parser import save_heightfield
        from modules.terrain import classify_elevation, eg_max
        from modules.worlds import generate_world

        os.makedirs(WORLD_DIR, exist_ok=True)
        for name in SAMPLE_WORLDS:
            world = generate_world(name, seed=0)
            path = os.path.join(WORLD_DIR, f"{name}.grid")
            save_heightfield(world, path)
            gain = eg_max(world)
            print(f"  {path}: {world.width}x{world.height} cells, EG_max {gain:.2f} m ({classify_elevation(gain)})")
        print("✓ Sample worlds exported\n")

    except Exception as e:
        print(f"❌ Error exporting worlds: {str(e)}")
        sys.exit(1)


def main():
    """Main initialization function."""
    print("\n" + "="*50)
    print("  RidgeRunner - Initialization")
    print("="*50 + "\n")

    # Install requirements
    install_requirements()

    # Create .env file
    create_env_file()

    # Export sample worlds
    export_sample_worlds()

    print("="*50)
    print("✅ Initialization complete!")
    print("="*50 + "\n")
    print("Next steps:")
    print("1. Run: python app.py run --scenario scenarios/flat.json --variant ours_full --out runs/flat")
    print("2. Compare: python app.py compare --out runs/cmp runs/a runs/b")
    print("3. Tests: pytest")
    print()


if __name__ == "__main__":
    main()
